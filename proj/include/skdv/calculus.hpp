#pragma once

#include "skdv/multi_index.hpp"
#include "skdv/super_expr.hpp"

namespace skdv {

// Even derivation with respect to a base variable: each term picks up the
// phase coefficient of `v`, and integer powers step down.
inline SuperExpr d_base(const SuperExpr& e, Var v) {
    const std::size_t k = static_cast<std::size_t>(v);
    SuperExpr r;
    for (const auto& [key, c] : e.terms()) {
        const Gaussian64& pc = key.even.phase[k];
        if (!pc.is_zero()) r.add_term(key, c * to_gaussian(pc));
        const int p = key.even.powers[k];
        if (p != 0) {
            SuperExpr::Key down = key;
            down.even.powers[k] = p - 1;
            r.add_term(down, c * GaussianRational(p));
        }
    }
    return r;
}

// Covariant derivative d/d(theta) + theta * d/d(x_var) for an arbitrary odd
// coordinate / base-variable pairing. Odd derivation: the theta-derivative
// removes the generator with the sign of commuting it to the front.
inline SuperExpr d_cov_at(const SuperExpr& e, GenId theta, Var x_var) {
    SuperExpr r;
    for (const auto& [key, c] : e.terms()) {
        GrassmannMonomial reduced;
        const int sign = grassmann_derive(key.odd, theta, reduced);
        if (sign != 0) {
            r.add_term(SuperExpr::Key{reduced, key.even}, sign < 0 ? -c : c);
        }
    }
    r += SuperExpr::odd(theta) * d_base(e, x_var);
    return r;
}

// D_i = d/d(theta_i) + theta_i * d/dx with D_i^2 = d/dx.
inline SuperExpr d_cov(const SuperExpr& e, int i) {
    if (i != 1 && i != 2) throw error("d_cov: index must be 1 or 2");
    return d_cov_at(e, i == 1 ? OddRegistry::kTheta1 : OddRegistry::kTheta2, Var::X);
}

inline SuperExpr apply_deriv(const SuperExpr& e, Deriv d) {
    switch (d) {
        case Deriv::Dx: return d_base(e, Var::X);
        case Deriv::Dt: return d_base(e, Var::T);
        case Deriv::Dt2: return d_base(e, Var::T2);
        case Deriv::D1: return d_cov(e, 1);
        case Deriv::D2: return d_cov(e, 2);
    }
    throw error("apply_deriv: bad derivation");
}

// Mixed derivative d_x^kx d_t^kt d_t2^kt2 D2^k2 D1^k1 (odd factors applied
// first, D1 innermost; the even factors commute with everything).
inline SuperExpr apply_multi(const SuperExpr& e, const MultiIndex& idx) {
    SuperExpr r = e;
    for (int k = 0; k < idx.k1; ++k) r = d_cov(r, 1);
    for (int k = 0; k < idx.k2; ++k) r = d_cov(r, 2);
    for (int k = 0; k < idx.kt2; ++k) r = d_base(r, Var::T2);
    for (int k = 0; k < idx.kt; ++k) r = d_base(r, Var::T);
    for (int k = 0; k < idx.kx; ++k) r = d_base(r, Var::X);
    return r;
}

// Components of a superfield A = u + theta1*xi1 + theta2*xi2 - theta1*theta2*v.
struct ComponentQuad {
    SuperExpr u;
    SuperExpr xi1;
    SuperExpr xi2;
    SuperExpr v;

    SuperExpr reassemble() const {
        return u + SuperExpr::odd(OddRegistry::kTheta1) * xi1 +
               SuperExpr::odd(OddRegistry::kTheta2) * xi2 -
               SuperExpr::odd(OddRegistry::kTheta1) * SuperExpr::odd(OddRegistry::kTheta2) * v;
    }
};

// Taylor components in theta1, theta2; v is the negated theta1*theta2
// component. The input may use odd constants inside coefficients but no
// other odd coordinates.
inline ComponentQuad taylor_components(const SuperExpr& e) {
    constexpr std::uint64_t allowed =
        (std::uint64_t(1) << OddRegistry::kTheta1) | (std::uint64_t(1) << OddRegistry::kTheta2);
    for (const auto& [key, c] : e.terms()) {
        (void)c;
        if (key.odd.mask & OddRegistry::coordinate_mask() & ~allowed)
            throw grading_error("taylor_components: only theta1/theta2 coordinates allowed");
    }
    const GrassmannMonomial t1 = GrassmannMonomial::single(OddRegistry::kTheta1);
    const GrassmannMonomial t2 = GrassmannMonomial::single(OddRegistry::kTheta2);
    GrassmannMonomial t12;
    grassmann_mul(t1, t2, t12);
    ComponentQuad q;
    q.u = extract_component(e, GrassmannMonomial::unit());
    q.xi1 = extract_component(e, t1);
    q.xi2 = extract_component(e, t2);
    q.v = -extract_component(e, t12);
    return q;
}

} // namespace skdv
