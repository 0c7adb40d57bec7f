#pragma once

#include <random>
#include <vector>

#include "skdv/super_expr.hpp"

namespace skdv {

// Seeded sampler for tau-function-shaped expressions: exponential
// polynomials 1 + sum c_k e^{phase_k} (+ optional theta1-odd-constant
// dressings), always even with body containing the constant 1.
class TauSampler {
public:
    explicit TauSampler(std::uint64_t seed) : rng_(seed) {}

    Rational small_rational(int lo = -3, int hi = 3) {
        std::uniform_int_distribution<int> num(lo, hi);
        std::uniform_int_distribution<int> den(1, 3);
        return Rational(num(rng_), den(rng_));
    }

    GaussianRational small_scalar(bool allow_imag = true) {
        GaussianRational c(small_rational());
        if (allow_imag && coin()) c += GaussianRational(Rational(0), small_rational());
        return c;
    }

    bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Phase random_phase(bool with_t2 = false) {
        Phase p{};
        p[static_cast<std::size_t>(Var::X)] = to_g64(GaussianRational(small_rational()));
        if (coin()) p[static_cast<std::size_t>(Var::T)] = to_g64(GaussianRational(small_rational()));
        if (with_t2 && coin())
            p[static_cast<std::size_t>(Var::T2)] = to_g64(GaussianRational(small_rational()));
        return p;
    }

    // Even superfield of R^{2|1} with nonzero body: up to `max_exp`
    // exponential terms and `max_odd` theta1 * odd-constant dressings.
    SuperExpr even_tau(int max_exp, int max_odd, const std::vector<GenId>& odd_constants,
                       bool with_t2 = false) {
        SuperExpr f = SuperExpr::one();
        const int n_exp = pick(1, max_exp);
        for (int k = 0; k < n_exp; ++k) {
            GaussianRational c = small_scalar();
            if (c.is_zero()) c = GaussianRational(1);
            f += c * SuperExpr::exp_phase(random_phase(with_t2));
        }
        const int n_odd = pick(0, max_odd);
        for (int k = 0; k < n_odd && !odd_constants.empty(); ++k) {
            const GenId z = odd_constants[static_cast<std::size_t>(
                pick(0, static_cast<int>(odd_constants.size()) - 1))];
            GaussianRational c = small_scalar();
            if (c.is_zero()) c = GaussianRational(1);
            f += c * SuperExpr::exp_phase(random_phase(with_t2)) *
                 SuperExpr::odd(OddRegistry::kTheta1) * SuperExpr::odd(z);
        }
        return f;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace skdv
