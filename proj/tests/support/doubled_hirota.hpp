#pragma once

// Independent oracle for the bilinear derivatives: represents f(z) g(z') in
// one algebra with primed copies of the coordinates, applies the literal
// (D - D')^k operator factors, and identifies primed with unprimed
// coordinates afterwards. Exercises a completely different code path from
// the recursive pair expansion in skdv/hirota.hpp.

#include <cassert>

#include "skdv/calculus.hpp"
#include "skdv/multi_index.hpp"
#include "skdv/super_expr.hpp"

namespace skdv_test {

using namespace skdv;

// x -> x', t -> t', t2 -> t2', theta_i -> theta_i'. The coordinate bits map
// order-preservingly below the odd constants, so no reordering signs arise.
inline SuperExpr prime_coordinates(const SuperExpr& g) {
    SuperExpr out;
    for (const auto& [key, c] : g.terms()) {
        for (std::size_t k = 3; k < kNumVars; ++k)
            assert(key.even.phase[k].is_zero() && key.even.powers[k] == 0);
        assert((key.odd.mask & 0b1100ull) == 0);
        EvenMonomial even;
        for (std::size_t k = 0; k < 3; ++k) {
            even.phase[k + 3] = key.even.phase[k];
            even.powers[k + 3] = key.even.powers[k];
        }
        const std::uint64_t mask =
            (key.odd.mask & ~0b11ull) | ((key.odd.mask & 0b11ull) << 2);
        out.add_term(SuperExpr::Key{GrassmannMonomial{mask}, even}, c);
    }
    return out;
}

// Sets primed coordinates equal to the unprimed ones; repeated thetas
// annihilate and reordering signs are tracked by rebuilding the monomial.
inline SuperExpr identify_primed(const SuperExpr& e) {
    SuperExpr out;
    for (const auto& [key, c] : e.terms()) {
        EvenMonomial even;
        for (std::size_t k = 0; k < 3; ++k) {
            even.phase[k] = key.even.phase[k] + key.even.phase[k + 3];
            even.powers[k] = key.even.powers[k] + key.even.powers[k + 3];
        }
        GrassmannMonomial mono;
        int sign = 1;
        for (GenId g : key.odd.ranks()) {
            GenId target = g;
            if (g == OddRegistry::kTheta1p) target = OddRegistry::kTheta1;
            if (g == OddRegistry::kTheta2p) target = OddRegistry::kTheta2;
            GrassmannMonomial next;
            const int s = grassmann_mul(mono, GrassmannMonomial::single(target), next);
            if (s == 0) {
                sign = 0;
                break;
            }
            sign *= s;
            mono = next;
        }
        if (sign == 0) continue;
        out.add_term(SuperExpr::Key{mono, even}, sign < 0 ? -c : c);
    }
    return out;
}

inline SuperExpr oracle_hirota(const SuperExpr& f, const SuperExpr& g, const MultiIndex& idx) {
    SuperExpr cur = f * prime_coordinates(g);
    const auto even_step = [&cur](Var v, Var vp) { cur = d_base(cur, v) - d_base(cur, vp); };
    const auto odd_step = [&cur](GenId th, GenId thp) {
        cur = d_cov_at(cur, th, Var::X) - d_cov_at(cur, thp, Var::Xp);
    };
    for (int k = 0; k < idx.kt2; ++k) even_step(Var::T2, Var::T2p);
    for (int k = 0; k < idx.kt; ++k) even_step(Var::T, Var::Tp);
    for (int k = 0; k < idx.kx; ++k) even_step(Var::X, Var::Xp);
    for (int k = 0; k < idx.k1; ++k) odd_step(OddRegistry::kTheta1, OddRegistry::kTheta1p);
    for (int k = 0; k < idx.k2; ++k) odd_step(OddRegistry::kTheta2, OddRegistry::kTheta2p);
    return identify_primed(cur);
}

} // namespace skdv_test
