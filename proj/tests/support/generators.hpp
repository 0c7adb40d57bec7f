#pragma once

// Hand-rolled randomized-input generators for the property tests. Kept apart
// from the library's tau sampler so the test inputs do not depend on the
// code under test beyond expression construction.

#include <random>
#include <vector>

#include "skdv/super_expr.hpp"

namespace skdv_test {

using namespace skdv;

class ExprGen {
public:
    explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return pick(0, 1) == 1; }

    GaussianRational coeff() {
        const Rational re(pick(-3, 3), pick(1, 3));
        const Rational im = coin() ? Rational(pick(-2, 2), pick(1, 2)) : Rational(0);
        GaussianRational c(re, im);
        return c.is_zero() ? GaussianRational(1) : c;
    }

    EvenMonomial monomial() {
        EvenMonomial m;
        const auto set = [this, &m](Var v) {
            if (coin())
                m.phase[static_cast<std::size_t>(v)] =
                    to_g64(GaussianRational(Rational(pick(-2, 2), pick(1, 2))));
            if (pick(0, 3) == 0) m.powers[static_cast<std::size_t>(v)] = pick(1, 2);
        };
        set(Var::X);
        set(Var::T);
        set(Var::T2);
        return m;
    }

    GrassmannMonomial odd_monomial(const std::vector<GenId>& gens, int max_degree) {
        GrassmannMonomial m;
        const int want = pick(0, max_degree);
        for (int k = 0; k < want; ++k) {
            const GenId g = gens[static_cast<std::size_t>(pick(0, int(gens.size()) - 1))];
            m.mask |= std::uint64_t(1) << g;
        }
        return m;
    }

    // Random canonical expression with up to `max_terms` terms drawing odd
    // generators from `gens`.
    SuperExpr expr(int max_terms, const std::vector<GenId>& gens, int max_odd_degree = 2) {
        SuperExpr e;
        const int n = pick(1, max_terms);
        for (int k = 0; k < n; ++k)
            e += SuperExpr::term(coeff(), monomial(),
                                 gens.empty() ? GrassmannMonomial{}
                                              : odd_monomial(gens, max_odd_degree));
        return e;
    }

    // Nonzero homogeneous expression of the requested parity.
    SuperExpr homogeneous(bool odd, int max_terms, const std::vector<GenId>& gens) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            const SuperExpr e = expr(max_terms, gens);
            const SuperExpr part = odd ? e.odd_part() : e.even_part();
            if (!part.is_zero()) return part;
        }
        return odd ? SuperExpr::odd(gens.at(0)) : SuperExpr::one();
    }

    // Even expression with nonzero body (usable as a denominator / tau).
    SuperExpr tau_like(int max_terms, const std::vector<GenId>& gens) {
        SuperExpr e = SuperExpr::one() + expr(max_terms, gens).even_part();
        if (e.body().is_zero()) e += SuperExpr::one();
        return e;
    }

private:
    std::mt19937_64 rng_;
};

inline std::vector<GenId> standard_gens() {
    return {OddRegistry::kTheta1, OddRegistry::kTheta2, OddRegistry::kZeta1};
}

} // namespace skdv_test
