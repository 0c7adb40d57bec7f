#pragma once

#include <string>

namespace skdv {

// Derivations acting on concrete expressions and jets.
enum class Deriv { Dx, Dt, Dt2, D1, D2 };

inline bool deriv_is_odd(Deriv d) { return d == Deriv::D1 || d == Deriv::D2; }

inline const char* to_string(Deriv d) {
    switch (d) {
        case Deriv::Dx: return "dx";
        case Deriv::Dt: return "dt";
        case Deriv::Dt2: return "dt2";
        case Deriv::D1: return "D1";
        case Deriv::D2: return "D2";
    }
    return "?";
}

// Exponent vector of a mixed derivative / bilinear operator
// S1^k1 S2^k2 Dx^kx Dt^kt Dt2^kt2.
struct MultiIndex {
    int kx  = 0;
    int kt  = 0;
    int kt2 = 0;
    int k1  = 0;
    int k2  = 0;

    int total_order() const { return kx + kt + kt2 + k1 + k2; }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    static MultiIndex x(int n = 1) { return {n, 0, 0, 0, 0}; }
    static MultiIndex t(int n = 1) { return {0, n, 0, 0, 0}; }
    static MultiIndex t2(int n = 1) { return {0, 0, n, 0, 0}; }
    static MultiIndex d1() { return {0, 0, 0, 1, 0}; }
    static MultiIndex d2() { return {0, 0, 0, 0, 1}; }

    MultiIndex operator+(const MultiIndex& o) const {
        return {kx + o.kx, kt + o.kt, kt2 + o.kt2, k1 + o.k1, k2 + o.k2};
    }
};

inline std::string to_string(const MultiIndex& m) {
    std::string s;
    const auto app = [&s](const char* base, int n) {
        for (int k = 0; k < n; ++k) {
            if (!s.empty()) s += ",";
            s += base;
        }
    };
    app("x", m.kx);
    app("t", m.kt);
    app("t2", m.kt2);
    app("theta1", m.k1);
    app("theta2", m.k2);
    return s.empty() ? "0" : s;
}

} // namespace skdv
