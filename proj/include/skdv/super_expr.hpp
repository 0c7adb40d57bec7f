#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skdv/errors.hpp"
#include "skdv/grassmann.hpp"
#include "skdv/rational.hpp"

namespace skdv {

// Base (even) variables. The primed copies exist for doubled-coordinate
// computations; ordinary expressions use x, t, t2 only.
enum class Var : std::uint8_t { X = 0, T = 1, T2 = 2, Xp = 3, Tp = 4, T2p = 5 };

inline constexpr std::size_t kNumVars = 6;

inline const char* var_name(Var v) {
    static const char* names[kNumVars] = {"x", "t", "t2", "x'", "t'", "t2'"};
    return names[static_cast<std::size_t>(v)];
}

// Exponent of a single exponential factor e^{sum c_v * v}; adding phases
// multiplies the exponentials. Coefficients are int64-backed exact complex
// rationals (phases only ever add; overflow throws rather than rounding).
using Phase = std::array<Gaussian64, kNumVars>;

inline int cmp(const Phase& a, const Phase& b) {
    for (std::size_t k = 0; k < kNumVars; ++k)
        if (int c = cmp(a[k], b[k]); c != 0) return c;
    return 0;
}

// One exponential phase together with integer powers of the base variables.
struct EvenMonomial {
    Phase phase{};
    std::array<int, kNumVars> powers{};

    bool is_unit() const {
        for (std::size_t k = 0; k < kNumVars; ++k)
            if (!phase[k].is_zero() || powers[k] != 0) return false;
        return true;
    }

    EvenMonomial operator*(const EvenMonomial& o) const {
        EvenMonomial r;
        for (std::size_t k = 0; k < kNumVars; ++k) {
            r.phase[k] = phase[k] + o.phase[k];
            r.powers[k] = powers[k] + o.powers[k];
        }
        return r;
    }

    friend bool operator==(const EvenMonomial& a, const EvenMonomial& b) {
        return cmp_even(a, b) == 0;
    }
    friend bool operator<(const EvenMonomial& a, const EvenMonomial& b) {
        return cmp_even(a, b) < 0;
    }

    static int cmp_even(const EvenMonomial& a, const EvenMonomial& b) {
        if (int c = cmp(a.phase, b.phase); c != 0) return c;
        for (std::size_t k = 0; k < kNumVars; ++k)
            if (a.powers[k] != b.powers[k]) return a.powers[k] < b.powers[k] ? -1 : 1;
        return 0;
    }
};

enum class Parity { Even, Odd, Mixed };

// Canonical sum of terms coeff * even-monomial * Grassmann-monomial. No two
// terms share an (even, odd) key and no zero coefficients are stored, so
// equality of expressions is equality of representations.
class SuperExpr {
public:
    struct Key {
        GrassmannMonomial odd;
        EvenMonomial even;

        friend bool operator<(const Key& a, const Key& b) {
            if (a.odd.mask != b.odd.mask) return a.odd.mask < b.odd.mask;
            return EvenMonomial::cmp_even(a.even, b.even) < 0;
        }
        friend bool operator==(const Key& a, const Key& b) {
            return a.odd == b.odd && EvenMonomial::cmp_even(a.even, b.even) == 0;
        }
    };
    using TermMap = std::map<Key, GaussianRational>;

    SuperExpr() = default;
    SuperExpr(const GaussianRational& c) {        // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_[Key{}] = c;
    }
    SuperExpr(long long n) : SuperExpr(GaussianRational(n)) {}  // NOLINT(google-explicit-constructor)

    static SuperExpr zero() { return {}; }
    static SuperExpr one() { return SuperExpr(1); }

    static SuperExpr term(const GaussianRational& c, const EvenMonomial& even,
                          const GrassmannMonomial& odd) {
        SuperExpr e;
        if (!c.is_zero()) e.terms_[Key{odd, even}] = c;
        return e;
    }

    static SuperExpr variable(Var v, int power = 1) {
        EvenMonomial m;
        m.powers[static_cast<std::size_t>(v)] = power;
        return term(1, m, {});
    }

    static SuperExpr exp_phase(const Phase& p) {
        EvenMonomial m;
        m.phase = p;
        return term(1, m, {});
    }

    static SuperExpr odd(GenId g) { return term(1, {}, GrassmannMonomial::single(g)); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Parity parity() const {
        bool has_even = false, has_odd = false;
        for (const auto& [key, c] : terms_) (key.odd.odd_parity() ? has_odd : has_even) = true;
        if (has_odd && has_even) return Parity::Mixed;
        return has_odd ? Parity::Odd : Parity::Even;
    }

    SuperExpr even_part() const { return filter(false); }
    SuperExpr odd_part() const { return filter(true); }

    // Grassmann-free part of the expression.
    SuperExpr body() const {
        SuperExpr r;
        for (const auto& [key, c] : terms_)
            if (key.odd.empty()) r.terms_.emplace(key, c);
        return r;
    }
    // Nilpotent remainder.
    SuperExpr soul() const {
        SuperExpr r;
        for (const auto& [key, c] : terms_)
            if (!key.odd.empty()) r.terms_.emplace(key, c);
        return r;
    }
    bool grassmann_free() const {
        return terms_.empty() || terms_.rbegin()->first.odd.empty();
    }

    SuperExpr operator-() const {
        SuperExpr r;
        for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
        return r;
    }

    SuperExpr& operator+=(const SuperExpr& o) {
        for (const auto& [key, c] : o.terms_) add_term(key, c);
        return *this;
    }
    SuperExpr& operator-=(const SuperExpr& o) {
        for (const auto& [key, c] : o.terms_) add_term(key, -c);
        return *this;
    }

    friend SuperExpr operator+(SuperExpr a, const SuperExpr& b) { return a += b; }
    friend SuperExpr operator-(SuperExpr a, const SuperExpr& b) { return a -= b; }

    // Graded-commutative product: swapping two odd generators flips the sign
    // and a repeated odd generator annihilates the term.
    friend SuperExpr operator*(const SuperExpr& a, const SuperExpr& b) {
        SuperExpr r;
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                GrassmannMonomial odd;
                const int sign = grassmann_mul(ka.odd, kb.odd, odd);
                if (sign == 0) continue;
                GaussianRational c = ca * cb;
                if (sign < 0) c = -c;
                r.add_term(Key{odd, ka.even * kb.even}, c);
            }
        }
        return r;
    }

    friend SuperExpr operator*(const GaussianRational& s, const SuperExpr& e) {
        SuperExpr r;
        if (s.is_zero()) return r;
        for (const auto& [key, c] : e.terms_) r.terms_.emplace(key, s * c);
        return r;
    }
    friend SuperExpr operator*(const SuperExpr& e, const GaussianRational& s) { return s * e; }

    friend bool operator==(const SuperExpr& a, const SuperExpr& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SuperExpr& a, const SuperExpr& b) { return !(a == b); }

    // Total order for use as an ordered-container key.
    friend bool operator<(const SuperExpr& a, const SuperExpr& b) {
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
            if (ia->first < ib->first) return true;
            if (ib->first < ia->first) return false;
            if (int c = cmp(ia->second, ib->second); c != 0) return c < 0;
        }
        return ia == a.terms_.end() && ib != b.terms_.end();
    }

    void add_term(const Key& key, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

private:
    SuperExpr filter(bool odd) const {
        SuperExpr r;
        for (const auto& [key, c] : terms_)
            if (key.odd.odd_parity() == odd) r.terms_.emplace(key, c);
        return r;
    }

    TermMap terms_;
};

// Coefficient of the coordinate monomial `component` in the Taylor expansion
// e = sum_G G * c_G, with the coordinate monomial written on the left (the
// layout u + theta1*xi1 + theta2*xi2 - theta1*theta2*v). Odd constants stay
// inside the coefficients. `component` must consist of coordinates only.
inline SuperExpr extract_component(const SuperExpr& e, const GrassmannMonomial& component) {
    if (component.mask & ~OddRegistry::coordinate_mask())
        throw grading_error("extract_component: monomial must contain coordinates only");
    SuperExpr r;
    for (const auto& [key, c] : e.terms()) {
        const std::uint64_t coords = key.odd.mask & OddRegistry::coordinate_mask();
        if (coords != component.mask) continue;
        // Coordinates rank below constants, so the canonical monomial is
        // already G followed by the constant part; no reordering sign.
        GrassmannMonomial rest{key.odd.mask & ~component.mask};
        r.add_term(SuperExpr::Key{rest, key.even}, c);
    }
    return r;
}

// Numeric evaluation of a body-only expression.
inline std::complex<double> eval_numeric(const SuperExpr& e,
                                         const std::array<double, kNumVars>& values) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [key, c] : e.terms()) {
        if (!key.odd.empty())
            throw grading_error("eval_numeric: expression has Grassmann support");
        std::complex<double> exponent(0.0, 0.0);
        double powers = 1.0;
        for (std::size_t k = 0; k < kNumVars; ++k) {
            const Gaussian64& pc = key.even.phase[k];
            if (!pc.is_zero())
                exponent += std::complex<double>(pc.re.to_double(), pc.im.to_double()) *
                            values[k];
            for (int p = 0; p < key.even.powers[k]; ++p) powers *= values[k];
        }
        acc += std::complex<double>(c.re().convert_to<double>(), c.im().convert_to<double>()) *
               std::exp(exponent) * powers;
    }
    return acc;
}

inline std::string to_string(const EvenMonomial& m) {
    std::string phase;
    for (std::size_t k = 0; k < kNumVars; ++k) {
        const Gaussian64& c = m.phase[k];
        if (c.is_zero()) continue;
        std::string piece;
        if (c.is_one())
            piece = var_name(static_cast<Var>(k));
        else if (c == Gaussian64(-1))
            piece = std::string("-") + var_name(static_cast<Var>(k));
        else
            piece = to_string(to_gaussian(c)) + "*" + var_name(static_cast<Var>(k));
        if (!phase.empty() && piece.front() != '-') phase += "+";
        phase += piece;
    }
    std::string s;
    if (!phase.empty()) s = "e^{" + phase + "}";
    for (std::size_t k = 0; k < kNumVars; ++k) {
        if (m.powers[k] == 0) continue;
        if (!s.empty()) s += "*";
        s += var_name(static_cast<Var>(k));
        if (m.powers[k] != 1) s += "^" + std::to_string(m.powers[k]);
    }
    return s;
}

// Deterministic rendering: coefficient, exponential phase, variable powers,
// Grassmann monomial, in canonical term order.
inline std::string to_string(const SuperExpr& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [key, c] : e.terms()) {
        std::string factors = to_string(key.even);
        {
            std::string odd = to_string(key.odd);
            if (!odd.empty()) {
                if (!factors.empty()) factors += "*";
                factors += odd;
            }
        }
        std::string term;
        if (factors.empty())
            term = to_string(c);
        else if (c.is_one())
            term = factors;
        else if (c == GaussianRational(-1))
            term = "-" + factors;
        else
            term = to_string(c) + "*" + factors;
        if (out.empty()) {
            out = term;
        } else if (term.front() == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

} // namespace skdv
