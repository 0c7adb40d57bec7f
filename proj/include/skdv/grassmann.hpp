#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "skdv/errors.hpp"

namespace skdv {

// Identifier of one odd generator; doubles as its rank in the fixed global
// total order. Ranks never change once assigned.
using GenId = unsigned;

// Registry of odd generators. The superspace coordinates theta1, theta2 and
// their primed doubles occupy the lowest ranks; odd constants (zeta, nu and
// user-declared ones) come after. Declarations append only, so existing
// ranks are stable; intended to be populated at setup time.
class OddRegistry {
public:
    static constexpr GenId kTheta1  = 0;
    static constexpr GenId kTheta2  = 1;
    static constexpr GenId kTheta1p = 2;
    static constexpr GenId kTheta2p = 3;
    static constexpr GenId kZeta1   = 4;
    static constexpr GenId kZeta2   = 5;
    static constexpr GenId kNu1     = 6;
    static constexpr GenId kNu2     = 7;

    static OddRegistry& instance() {
        static OddRegistry reg;
        return reg;
    }

    // Idempotent: redeclaring a known name returns the existing id.
    GenId declare_constant(const std::string& name) {
        for (GenId k = 0; k < gens_.size(); ++k)
            if (gens_[k].name == name) return k;
        if (gens_.size() >= 64) throw error("odd generator limit (64) reached");
        gens_.push_back({name, false});
        return static_cast<GenId>(gens_.size() - 1);
    }

    const std::string& name(GenId id) const { return gens_.at(id).name; }
    bool is_coordinate(GenId id) const { return gens_.at(id).coordinate; }
    std::size_t size() const { return gens_.size(); }

    // Bitmask of all coordinate generators (primed and unprimed thetas).
    static constexpr std::uint64_t coordinate_mask() { return 0xFull; }

private:
    struct Gen {
        std::string name;
        bool coordinate;
    };

    OddRegistry() {
        gens_ = {{"theta1", true}, {"theta2", true}, {"theta1'", true}, {"theta2'", true},
                 {"zeta1", false}, {"zeta2", false}, {"nu1", false},    {"nu2", false}};
    }

    std::vector<Gen> gens_;
};

// Product of distinct odd generators in strictly increasing rank order,
// stored as a bitmask. The empty monomial is the even unit.
struct GrassmannMonomial {
    std::uint64_t mask = 0;

    static GrassmannMonomial unit() { return {}; }
    static GrassmannMonomial single(GenId g) { return {std::uint64_t(1) << g}; }

    bool empty() const { return mask == 0; }
    bool contains(GenId g) const { return (mask >> g) & 1u; }
    int degree() const { return std::popcount(mask); }
    bool odd_parity() const { return degree() % 2 != 0; }

    std::vector<GenId> ranks() const {
        std::vector<GenId> out;
        for (std::uint64_t m = mask; m;) {
            const int k = std::countr_zero(m);
            out.push_back(static_cast<GenId>(k));
            m &= m - 1;
        }
        return out;
    }

    friend bool operator==(const GrassmannMonomial& a, const GrassmannMonomial& b) = default;
    friend auto operator<=>(const GrassmannMonomial& a, const GrassmannMonomial& b) = default;
};

// Multiplies a*b. Returns the sign (+1/-1) and writes the product monomial;
// returns 0 when a generator repeats (square-zero annihilation).
inline int grassmann_mul(const GrassmannMonomial& a, const GrassmannMonomial& b,
                         GrassmannMonomial& out) {
    if (a.mask & b.mask) return 0;
    // Sign of sorting the concatenation a|b: each generator of b passes every
    // generator of a with a higher rank.
    int swaps = 0;
    for (std::uint64_t m = b.mask; m;) {
        const int k = std::countr_zero(m);
        const std::uint64_t higher = a.mask >> (k + 1) << (k + 1);
        swaps += std::popcount(higher);
        m &= m - 1;
    }
    out.mask = a.mask | b.mask;
    return (swaps % 2 == 0) ? 1 : -1;
}

// Left derivative with respect to generator g: removes g with the sign of
// commuting it to the front, (-1)^(number of lower-ranked generators present).
// Returns 0 when g is absent.
inline int grassmann_derive(const GrassmannMonomial& m, GenId g, GrassmannMonomial& out) {
    if (!m.contains(g)) return 0;
    const std::uint64_t below = m.mask & ((std::uint64_t(1) << g) - 1);
    out.mask = m.mask & ~(std::uint64_t(1) << g);
    return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

inline std::string to_string(const GrassmannMonomial& m) {
    std::string s;
    for (GenId g : m.ranks()) {
        if (!s.empty()) s += "*";
        s += OddRegistry::instance().name(g);
    }
    return s;
}

} // namespace skdv
