#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skdv/bell.hpp"
#include "skdv/calculus.hpp"
#include "skdv/fraction.hpp"
#include "skdv/hirota.hpp"
#include "skdv/jet.hpp"
#include "skdv/report.hpp"
#include "skdv/sampling.hpp"
#include "skdv/soliton.hpp"

namespace skdv {

// ---------------------------------------------------------------------------
// The two coupled N=1 flows for the parameter family, as moved-left residuals
// in the jets of B and p.

inline std::pair<JetExpr, JetExpr> n1_residuals(const GaussianRational& a) {
    const FieldId B = FieldRegistry::kB, P = FieldRegistry::kP;
    const JetExpr Bt = jet(B, 0, 1);
    const JetExpr Bx = jet(B, 1);
    const JetExpr Bxx = jet(B, 2);
    const JetExpr Bxxx = jet(B, 3);
    const JetExpr pxx = jet(P, 2);
    const JetExpr D1Bx = jet(B, 1, 0, 0, 1);
    const JetExpr D1Bxx = jet(B, 2, 0, 0, 1);
    const JetExpr D1px = jet(P, 1, 0, 0, 1);
    const JetExpr D1pt = jet(P, 0, 1, 0, 1);
    const JetExpr D1pxxx = jet(P, 3, 0, 0, 1);
    const GaussianRational one(1), two(2), three(3);

    JetExpr r1 = Bt + Bxxx - (a + two) * (Bx * pxx) - (a - one) * (D1Bx * D1px) -
                 a * (Bx * Bx * Bx);
    JetExpr r2 = D1pt + D1pxxx - three * (pxx * D1px) + (a + two) * (Bx * D1Bxx) -
                 (one - a) * (Bxx * D1Bx) - three * a * (Bx * Bx * D1px);
    return {r1, r2};
}

// Right-hand side of the first flow (the on-shell substitution for B_t).
inline JetExpr n1_flow_rhs(const GaussianRational& a) {
    const auto [r1, r2] = n1_residuals(a);
    (void)r2;
    return jet(FieldRegistry::kB, 0, 1) - r1;
}

enum class CaseId { A1, A4, TwoBoson, Am2, Miura, QFlow, N2Kdv, Burgers, BellLink };

// Catalogue entry for a verification case; the coupled-flow family only
// admits the three integrable parameter values.
struct EquationSpec {
    CaseId id;
    GaussianRational a;

    explicit EquationSpec(CaseId id_, const GaussianRational& a_ = GaussianRational(0))
        : id(id_), a(a_) {
        const bool kdv_family = id == CaseId::A1 || id == CaseId::A4 || id == CaseId::Am2;
        if (kdv_family && !(a == GaussianRational(1) || a == GaussianRational(4) ||
                            a == GaussianRational(-2)))
            throw error("EquationSpec: parameter must be one of 1, 4, -2");
    }
};

// One member of a bilinear system on a tau pair: an operator combination
// that either vanishes outright or matches a lambda-scaled right-hand side.
struct BilinearConstraint {
    OperatorCombo lhs;
    OperatorCombo rhs;  // scaled by lambda; empty for the zero form
};

struct BilinearSystem {
    GaussianRational lambda{0};
    std::vector<BilinearConstraint> members;

    SuperExpr residual(const TauPair& tau, std::size_t member) const {
        const auto& m = members.at(member);
        SuperExpr r = hirota_poly(tau.f, tau.g, m.lhs);
        if (!m.rhs.empty()) r -= lambda * hirota_poly(tau.f, tau.g, m.rhs);
        return r;
    }

    bool satisfied(const TauPair& tau) const {
        for (std::size_t k = 0; k < members.size(); ++k)
            if (!residual(tau, k).is_zero()) return false;
        return true;
    }

    // (Dt + Dx^3)(f.g) = 3 lambda Dx(f.g),  Dx^2(f.g) = lambda f g.
    static BilinearSystem mkdv_family(const GaussianRational& lambda) {
        BilinearSystem s;
        s.lambda = lambda;
        s.members.push_back({{{GaussianRational(1), MultiIndex::t()},
                              {GaussianRational(1), MultiIndex::x(3)}},
                             {{GaussianRational(3), MultiIndex::x()}}});
        s.members.push_back(
            {{{GaussianRational(1), MultiIndex::x(2)}}, {{GaussianRational(1), MultiIndex{}}}});
        return s;
    }
};


// ---------------------------------------------------------------------------
// a = 1: direct binary-Bell representation.

inline CheckReport check_a1() {
    CheckReport rep;
    rep.case_id = "a1";
    const FieldId B = FieldRegistry::kB, P = FieldRegistry::kP;
    const GaussianRational i = GaussianRational::i();
    const BellSlot s1(i, B), s2(GaussianRational(-1), P);
    const auto [R1, R2] = n1_residuals(GaussianRational(1));

    const JetExpr combo1 =
        binary_bell(MultiIndex::t(), s1, s2) + binary_bell(MultiIndex::x(3), s1, s2);
    const JetExpr resid1 = combo1 - i * R1;
    rep.add("Y_t(iB,-p) + Y_3x(iB,-p) reproduces the first flow", resid1.is_zero(),
            resid1.size());

    const FlowRule rule_bt(JetVariable{B, 0, 1, 0, 0}, n1_flow_rhs(GaussianRational(1)));
    const JetExpr combo2 = binary_bell(MultiIndex{0, 1, 0, 1, 0}, s1, s2) +
                           binary_bell(MultiIndex{3, 0, 0, 1, 0}, s1, s2);
    const JetExpr reduced = reduce_on_shell(combo2, {rule_bt});
    const JetMonomial d1pt_mono = jet(P, 0, 1, 0, 1).terms().begin()->first;
    GaussianRational unit(0);
    if (auto it = reduced.terms().find(d1pt_mono); it != reduced.terms().end())
        unit = it->second;
    JetExpr resid2 = reduced;
    bool ok2 = false;
    if (!unit.is_zero()) {
        resid2 = reduced - unit * R2;
        ok2 = resid2.is_zero();
    }
    rep.add("Y_ttheta1 + Y_xxxtheta1 reproduces the second flow on shell", ok2, resid2.size(),
            "unit multiple " + to_string(unit));

    // Control: corrupting the 3*c*d coefficient of Y_3x must leave a residual
    // in the B_x p_xx direction.
    const JetExpr mutated =
        resid1 - (i * GaussianRational(-1)) * (jet(B, 1) * jet(P, 2));
    rep.add("mutation control (3 -> 2 in Y_3x)", !mutated.is_zero(), mutated.size());
    return rep;
}

// ---------------------------------------------------------------------------
// Two-Boson flow: Bell form and the variable chain.

inline JetExpr two_boson_r31() {
    const FieldId N = FieldRegistry::kN, M = FieldRegistry::kM;
    return jet(N, 0, 0, 1) - jet(M, 2) - jet(N, 1) * jet(N, 1);
}
inline JetExpr two_boson_r32() {
    const FieldId N = FieldRegistry::kN, M = FieldRegistry::kM;
    return jet(M, 0, 0, 1, 1) - jet(N, 2, 0, 0, 1) -
           GaussianRational(2) * (jet(N, 1) * jet(M, 1, 0, 0, 1));
}

// On-shell rules n_t2 -> m_xx + n_x^2 and D1 m_t2 -> D1 n_xx + 2 n_x D1 m_x.
inline std::vector<FlowRule> two_boson_rules() {
    const FieldId N = FieldRegistry::kN, M = FieldRegistry::kM;
    std::vector<FlowRule> rules;
    rules.emplace_back(JetVariable{N, 0, 0, 1, 0}, jet(M, 2) + jet(N, 1) * jet(N, 1));
    rules.emplace_back(JetVariable{M, 0, 0, 1, 1},
                       jet(N, 2, 0, 0, 1) +
                           GaussianRational(2) * (jet(N, 1) * jet(M, 1, 0, 0, 1)));
    return rules;
}

inline CheckReport check_two_boson() {
    CheckReport rep;
    rep.case_id = "two-boson";
    const FieldId N = FieldRegistry::kN, M = FieldRegistry::kM;
    const FieldId W = FieldRegistry::kW, RHO = FieldRegistry::kRho;
    const FieldId C = FieldRegistry::kC, Q = FieldRegistry::kQ;
    const BellSlot sn(GaussianRational(1), N), sm(GaussianRational(1), M);
    const GaussianRational half(Rational(1, 2));

    const JetExpr r31 = two_boson_r31();
    const JetExpr r32 = two_boson_r32();

    const JetExpr resid1 = binary_bell(MultiIndex::t2(), sn, sm) -
                           binary_bell(MultiIndex::x(2), sn, sm) + (-r31);
    rep.add("Y_t2(n,m) - Y_xx(n,m) reproduces the flow", resid1.is_zero(), resid1.size());

    const std::vector<FlowRule> rule1{two_boson_rules().front()};
    const JetExpr combo2 = binary_bell(MultiIndex{0, 0, 1, 1, 0}, sn, sm) -
                           binary_bell(MultiIndex{2, 0, 0, 1, 0}, sn, sm);
    const JetExpr resid2 = reduce_on_shell(combo2, rule1) - r32;
    rep.add("Y_t2theta1 - Y_xxtheta1 reproduces the odd flow on shell", resid2.is_zero(),
            resid2.size());

    // Variable chain w = C_x, rho = D1 q_x, then q = (m+n)/2, C = n.
    const JetExpr e1 = jet(W, 0, 0, 1) -
                       jet_derive(-jet(W, 1) + jet(W) * jet(W) +
                                      GaussianRational(2) * jet(RHO, 0, 0, 0, 1),
                                  Deriv::Dx);
    const JetExpr e2 = jet(RHO, 0, 0, 1) -
                       jet_derive(jet(RHO, 1) + GaussianRational(2) * (jet(W) * jet(RHO)),
                                  Deriv::Dx);
    const std::map<FieldId, JetExpr> sub_wrho{{W, jet(C, 1)}, {RHO, jet(Q, 1, 0, 0, 1)}};
    const std::map<FieldId, JetExpr> sub_cq{{C, jet(N)}, {Q, half * (jet(M) + jet(N))}};

    const JetExpr x1 = subst_fields(subst_fields(e1, sub_wrho), sub_cq);
    const JetExpr resid3 = x1 - jet_derive(r31, Deriv::Dx);
    rep.add("chain maps the even flow to the d/dx of the reduced flow", resid3.is_zero(),
            resid3.size());

    const JetExpr x2 = subst_fields(subst_fields(e2, sub_wrho), sub_cq);
    const JetExpr resid4 =
        reduce_on_shell(x2, rule1) - half * jet_derive(r32, Deriv::Dx);
    rep.add("chain maps the odd flow to the d/dx of the reduced odd flow", resid4.is_zero(),
            resid4.size());
    return rep;
}

// ---------------------------------------------------------------------------
// a = 4: determination of the Bell-representation coefficients.

struct CoefficientSolution {
    GaussianRational alpha;
    GaussianRational beta;
    GaussianRational gamma;
    GaussianRational delta;

    std::string str() const {
        return "alpha=" + to_string(alpha) + ", beta=" + to_string(beta) +
               ", gamma=" + to_string(gamma) + ", delta=" + to_string(delta);
    }
};

struct A4Outcome {
    bool solved = false;
    CoefficientSolution primary;
    std::vector<CoefficientSolution> solutions;
    CheckReport report;
};

namespace detail {

struct A4Row {
    JetMonomial mono;
    GaussianRational c3;   // coefficient in Y_3x
    GaussianRational ct;   // coefficient in Y_x,t2 (on shell)
    GaussianRational rhs;  // coefficient in the flow right-hand side
    int deg_n = 0;
    int deg_m = 0;
};

inline GaussianRational pow_gr(const GaussianRational& b, int n) {
    GaussianRational r(1);
    for (int k = 0; k < n; ++k) r *= b;
    return r;
}

} // namespace detail

// Verifies the odd-sector identity for a candidate solution. When
// `variant_minus_p` is set, the x,t2,theta1 Bell polynomial takes the second
// slot as -p instead of beta*p; the discrepancy is reported, not hidden.
inline std::pair<bool, std::size_t> a4_theta_sector(const CoefficientSolution& sol,
                                                    bool variant_minus_p) {
    const FieldId B = FieldRegistry::kB, P = FieldRegistry::kP;
    const BellSlot sb(sol.alpha, B), sp(sol.beta, P);
    const BellSlot sp_var(GaussianRational(-1), P);
    const JetExpr combo =
        binary_bell(MultiIndex{0, 1, 0, 1, 0}, sb, sp) +
        (-(sol.alpha * sol.gamma)) * binary_bell(MultiIndex{3, 0, 0, 1, 0}, sb, sp) +
        (-(sol.alpha * sol.delta)) *
            binary_bell(MultiIndex{1, 0, 1, 1, 0}, sb, variant_minus_p ? sp_var : sp);

    std::vector<FlowRule> rules;
    rules.emplace_back(JetVariable{B, 0, 1, 0, 0}, n1_flow_rhs(GaussianRational(4)));
    // Second flow of the hierarchy rewritten for B and p:
    //   B_t2 = (beta/alpha) p_xx + alpha B_x^2
    //   D1 p_t2 = (alpha/beta) D1 B_xx + 2 alpha B_x D1 p_x
    rules.emplace_back(JetVariable{B, 0, 0, 1, 0},
                       (sol.beta / sol.alpha) * jet(P, 2) +
                           sol.alpha * (jet(B, 1) * jet(B, 1)));
    rules.emplace_back(JetVariable{P, 0, 0, 1, 1},
                       (sol.alpha / sol.beta) * jet(B, 2, 0, 0, 1) +
                           GaussianRational(2) * sol.alpha *
                               (jet(B, 1) * jet(P, 1, 0, 0, 1)));

    const auto [R1, R2] = n1_residuals(GaussianRational(4));
    (void)R1;
    const JetExpr resid = reduce_on_shell(combo, rules) - sol.beta * R2;
    return {resid.is_zero(), resid.size()};
}

inline A4Outcome solve_a4_coefficients() {
    A4Outcome out;
    out.report.case_id = "a4";
    const FieldId B = FieldRegistry::kB, P = FieldRegistry::kP;
    const FieldId N = FieldRegistry::kN, M = FieldRegistry::kM;
    const BellSlot sn(GaussianRational(1), N), sm(GaussianRational(1), M);

    // Bell expansions in the (n, m) variables, the x,t2 one taken on shell.
    const JetExpr y3 = binary_bell(MultiIndex::x(3), sn, sm);
    std::vector<JetVariable> leftover;
    const JetExpr yt2x =
        reduce_on_shell(binary_bell(MultiIndex{1, 0, 1, 0, 0}, sn, sm), two_boson_rules(),
                        &leftover);
    if (!leftover.empty()) {
        out.report.add("x,t2 Bell polynomial reduces to spatial jets", false, leftover.size());
        return out;
    }
    const JetExpr yt = binary_bell(MultiIndex::t(), sn, sm);
    const bool yt_ok = yt == jet(N, 0, 1);
    out.report.add("Y_t(n,m) = n_t", yt_ok, yt_ok ? 0 : yt.size());

    // Flow right-hand side renamed into the (n, m) variables.
    const JetExpr rhs_nm =
        subst_fields(n1_flow_rhs(GaussianRational(4)), {{B, jet(N)}, {P, jet(M)}});
    for (const auto& [mono, c] : rhs_nm.terms()) {
        (void)c;
        for (const auto& v : mono.vars)
            if (v.has_time()) {
                out.report.add("flow right-hand side is spatial", false, rhs_nm.size());
                return out;
            }
    }

    // Coefficient rows per jet monomial; alpha/beta powers are the n/m jet
    // counts of the monomial.
    std::map<JetMonomial, detail::A4Row> rows;
    const auto feed = [&rows](const JetExpr& e, int which) {
        for (const auto& [mono, c] : e.terms()) {
            auto& row = rows[mono];
            row.mono = mono;
            if (which == 0)
                row.c3 = c;
            else if (which == 1)
                row.ct = c;
            else
                row.rhs = c;
            row.deg_n = row.deg_m = 0;
            for (const auto& v : mono.vars) {
                if (v.field == FieldRegistry::kN) ++row.deg_n;
                if (v.field == FieldRegistry::kM) ++row.deg_m;
            }
        }
    };
    feed(y3, 0);
    feed(yt2x, 1);
    feed(rhs_nm, 2);

    const JetMonomial mono_nxxx = jet(N, 3).terms().begin()->first;
    const JetMonomial mono_nx_mxx = (jet(N, 1) * jet(M, 2)).terms().begin()->first;
    const JetMonomial mono_nx3 =
        (jet(N, 1) * jet(N, 1) * jet(N, 1)).terms().begin()->first;
    const JetMonomial mono_dd =
        (jet(N, 1, 0, 0, 1) * jet(M, 1, 0, 0, 1)).terms().begin()->first;
    for (const auto& mono : {mono_nxxx, mono_nx_mxx, mono_nx3, mono_dd}) {
        if (rows.find(mono) == rows.end()) {
            out.report.add("expected jet monomials present", false, rows.size());
            return out;
        }
    }
    const detail::A4Row& e1 = rows[mono_nxxx];
    const detail::A4Row& e2 = rows[mono_nx_mxx];
    const detail::A4Row& e3 = rows[mono_nx3];
    const detail::A4Row& e4 = rows[mono_dd];

    // Elimination: e4 has no Y_3x part and pins delta once alpha, beta are
    // known; e1 and e3 share gamma+delta and give alpha^2; e2 gives beta.
    std::string struct_notes;
    const bool structure_ok = e1.c3 == e3.c3 && e1.ct == e3.ct && !e1.c3.is_zero() &&
                              e1.c3 == e1.ct && e2.c3 == e2.ct && !e2.c3.is_zero() &&
                              e4.c3.is_zero() && !e4.ct.is_zero() && !e1.rhs.is_zero();
    out.report.add("elimination structure", structure_ok);
    if (!structure_ok) return out;

    const auto alpha2 = e3.rhs / e1.rhs;  // alpha^2 = r3 / r1 (unit leading blocks)
    const auto roots = sqrt_exact(alpha2);
    if (!roots) {
        out.report.add("alpha^2 admits Gaussian-rational roots", false);
        return out;
    }
    const GaussianRational beta = e2.rhs / (e2.c3 * e1.rhs);
    for (const GaussianRational& alpha : {roots->first, roots->second}) {
        const GaussianRational gd = e1.rhs / (e1.c3 * alpha);  // gamma + delta
        const GaussianRational delta = e4.rhs / (e4.ct * alpha * beta);
        const GaussianRational gamma = gd - delta;
        CoefficientSolution sol{alpha, beta, gamma, delta};
        bool verifies = true;
        for (const auto& [mono, row] : rows) {
            (void)mono;
            const GaussianRational scale =
                detail::pow_gr(sol.alpha, row.deg_n) * detail::pow_gr(sol.beta, row.deg_m);
            if (!((row.c3 * sol.gamma + row.ct * sol.delta) * scale == row.rhs)) {
                verifies = false;
                break;
            }
        }
        if (verifies) out.solutions.push_back(sol);
    }
    if (out.solutions.empty()) {
        out.report.add("coefficient system has a solution", false);
        return out;
    }
    out.solved = true;
    out.primary = out.solutions.front();
    for (const auto& s : out.solutions)
        if (s.alpha.im() > 0) out.primary = s;
    {
        std::string detail_str = out.primary.str();
        if (out.solutions.size() > 1) {
            detail_str += " | alternatives:";
            for (const auto& s : out.solutions)
                if (!(s.alpha == out.primary.alpha)) detail_str += " {" + s.str() + "}";
        }
        out.report.add("coefficient solution", true, 0, detail_str);
    }

    // Even sector with the solved values: gamma Y_3x + delta Y_x,t2 equals
    // the flow right-hand side.
    {
        JetExpr even_resid;
        for (const auto& [mono, row] : rows) {
            const GaussianRational scale =
                detail::pow_gr(out.primary.alpha, row.deg_n) *
                detail::pow_gr(out.primary.beta, row.deg_m);
            even_resid.add_term(
                mono, (row.c3 * out.primary.gamma + row.ct * out.primary.delta) * scale -
                          row.rhs);
        }
        out.report.add("even-sector identity", even_resid.is_zero(), even_resid.size());
    }

    // The solved coefficients induce the bilinear pair
    // (Dt + 1/4 Dx^3 + 3/4 Dx Dt2)(f.g) = 0 and its S1 companion.
    {
        const GaussianRational cx3 = -(out.primary.alpha * out.primary.gamma);
        const GaussianRational cxt2 = -(out.primary.alpha * out.primary.delta);
        const bool pair_ok = cx3 == GaussianRational(Rational(1, 4)) &&
                             cxt2 == GaussianRational(Rational(3, 4));
        out.report.add("induced bilinear combination Dt + 1/4*Dx^3 + 3/4*Dx*Dt2", pair_ok, 0,
                       "Dx^3 weight " + to_string(cx3) + ", Dx*Dt2 weight " + to_string(cxt2));
    }

    const auto [theta_ok, theta_terms] = a4_theta_sector(out.primary, false);
    out.report.add("theta1-sector identity (second slot -2p)", theta_ok, theta_terms);
    const auto [variant_ok, variant_terms] = a4_theta_sector(out.primary, true);
    out.report.add("theta1-sector variant with second slot -p stays nonzero (typo check)",
                   !variant_ok, variant_terms,
                   "printed variant differs; -2p is the consistent reading");

    // Control: without the Y_x,t2 term the system must be unsolvable; the
    // mixed-derivative monomial has no other source.
    out.report.add("mutated ansatz (delta term dropped) has no solution", !e4.rhs.is_zero());
    return out;
}

// ---------------------------------------------------------------------------
// Fermionic-limit system and the Miura map.

inline std::pair<SuperFraction, SuperFraction> fermionic_limit_residuals(
    const SuperFraction& u, const SuperFraction& v) {
    for (const SuperFraction* p : {&u, &v}) {
        if (!p->num().grassmann_free())
            throw grading_error("fermionic_limit_residuals: inputs must be Grassmann-free");
    }
    const GaussianRational six(6), twelve(12);
    const SuperFraction ux = u.derive(Deriv::Dx);
    const SuperFraction uxx = ux.derive(Deriv::Dx);
    const SuperFraction uxxx = uxx.derive(Deriv::Dx);
    const SuperFraction vx = v.derive(Deriv::Dx);
    const SuperFraction vxxx = vx.derive(Deriv::Dx).derive(Deriv::Dx);
    const SuperFraction ru = u.derive(Deriv::Dt) + uxxx + six * (u * u * ux);
    const SuperFraction rv = v.derive(Deriv::Dt) + vxxx - six * (v * vx) - six * (ux * uxx) +
                             six * (u * u * vx) + twelve * (u * ux * v);
    return {ru, rv};
}

// u = q12/2, v = (q12^2 + q0x^2)/4 - q0xx/2, taking the q0 input through its
// x-derivative (q0 itself is a logarithm and never materialized).
inline std::pair<SuperFraction, SuperFraction> miura_map(const SuperFraction& q0x,
                                                         const SuperFraction& q12) {
    const GaussianRational half(Rational(1, 2)), quarter(Rational(1, 4));
    const SuperFraction u = half * q12;
    const SuperFraction v =
        quarter * (q12 * q12 + q0x * q0x) - half * q0x.derive(Deriv::Dx);
    return {u, v};
}

inline CheckReport check_miura(const SolitonParams& par) {
    CheckReport rep;
    rep.case_id = "miura";
    SolitonSpec spec;
    spec.kind = SolitonSpec::Kind::One;
    spec.kappas = {GaussianRational(par.kappa)};
    const TauPair tau = build_tau(spec);
    const GaussianRational two(2), half(Rational(1, 2));

    // q0/2 = ln(f/g): the flow derivatives of q0 are log-derivative fractions.
    const SuperFraction q0x = two * dlog_ratio_x(tau);
    const SuperFraction q0t =
        two * (log_derivative(tau.f, MultiIndex::t()) - log_derivative(tau.g, MultiIndex::t()));
    const SuperFraction mkdv =
        q0t + q0x.derive(Deriv::Dx).derive(Deriv::Dx) - half * (q0x * q0x * q0x);
    rep.add("one-soliton solves the potential modified flow", mkdv.is_zero(),
            mkdv.num().size());

    const auto [u, v] = miura_map(q0x, SuperFraction::zero());
    rep.add("map with q12 = 0 gives u = 0", u.is_zero(), u.num().size());

    const auto [ru, rv] = fermionic_limit_residuals(u, v);
    rep.add("mapped v solves the classical flow exactly", rv.is_zero() && ru.is_zero(),
            rv.num().size());

    // Closed form: v = -2 kappa^2 e^eta / (1 + e^eta)^2.
    const GaussianRational k(par.kappa);
    const SuperExpr ee = SuperExpr::exp_phase(soliton_phase(k));
    SuperFraction expected(GaussianRational(-2) * k * k * ee);
    expected = expected / SuperFraction(tau.f) / SuperFraction(tau.f);
    const SuperFraction vs = v.simplified();
    const bool form_ok = vs == expected && vs.den_factors().size() == 1;
    rep.add("mapped v simplifies to -2k^2 e^eta/(1+e^eta)^2", form_ok, (vs - expected).num().size());
    return rep;
}

// ---------------------------------------------------------------------------
// a = -2 chain: bilinear systems on tau functions and the assembled (u, v).

inline CheckReport check_am2_chain(const SolitonParams& par) {
    CheckReport rep;
    rep.case_id = "am2";

    // Decoupled flows in Bell form with a genuinely free second slot.
    auto& reg = FieldRegistry::instance();
    const FieldId bhat = reg.declare("bhat", false, true);
    const FieldId ghat = reg.declare("ghat", false, true);
    const GaussianRational i = GaussianRational::i();
    const GaussianRational half(Rational(1, 2));
    {
        const FieldId Q0 = FieldRegistry::kQ0, Q0T = FieldRegistry::kQ0t;
        const BellSlot s1(half, Q0), s2(jet(bhat), Q0T);
        const JetExpr combo = binary_bell(MultiIndex::t(), s1, s2) +
                              binary_bell(MultiIndex::x(3), s1, s2) -
                              GaussianRational(3) * (binary_bell(MultiIndex::x(), s1, s2) *
                                                     binary_bell(MultiIndex::x(2), s1, s2));
        const JetExpr q0x3 = jet(Q0, 1) * jet(Q0, 1) * jet(Q0, 1);
        const JetExpr target = half * (jet(Q0, 0, 1) + jet(Q0, 3) - half * q0x3);
        const JetExpr resid = combo - target;
        rep.add("Bell form of the q0 flow (free auxiliary slot)", resid.is_zero(), resid.size());
    }
    {
        const FieldId P12 = FieldRegistry::kP12, P12T = FieldRegistry::kP12t;
        const BellSlot s1(half * i, P12), s2(jet(ghat), P12T);
        const JetExpr combo = binary_bell(MultiIndex::t(), s1, s2) +
                              binary_bell(MultiIndex::x(3), s1, s2) -
                              GaussianRational(3) * (binary_bell(MultiIndex::x(), s1, s2) *
                                                     binary_bell(MultiIndex::x(2), s1, s2));
        const JetExpr px3 = jet(P12, 1) * jet(P12, 1) * jet(P12, 1);
        const JetExpr target =
            (half * i) * (jet(P12, 0, 1) + jet(P12, 3) + half * px3);
        const JetExpr resid = combo - target;
        rep.add("Bell form of the p12 flow (free auxiliary slot)", resid.is_zero(),
                resid.size());
    }

    // Bilinear systems at lambda = 0 on the exact tau functions.
    const BilinearSystem system = BilinearSystem::mkdv_family(GaussianRational(0));
    const auto tau_case = [&](const char* label, const SolitonSpec& spec) {
        const TauPair tau = build_tau(spec);
        const SuperExpr r1 = system.residual(tau, 0);
        const SuperExpr r2 = system.residual(tau, 1);
        rep.add(std::string("(Dt+Dx^3)(f.g) = 0, ") + label, r1.is_zero(), r1.size());
        rep.add(std::string("Dx^2(f.g) = 0, ") + label, r2.is_zero(), r2.size());
    };
    SolitonSpec one, one_t, two, two_t;
    one.kind = SolitonSpec::Kind::One;
    one.kappas = {GaussianRational(par.kappa)};
    one_t = one;
    one_t.tilde = true;
    one_t.kappas = {GaussianRational(par.kappa_tilde)};
    two.kind = SolitonSpec::Kind::Two;
    two.kappas = {GaussianRational(par.kappa1), GaussianRational(par.kappa2)};
    two_t = two;
    two_t.tilde = true;
    two_t.kappas = {GaussianRational(par.kappa_tilde1), GaussianRational(par.kappa_tilde2)};
    tau_case("1-soliton", one);
    tau_case("1-soliton dressed", one_t);
    tau_case("2-soliton", two);
    tau_case("2-soliton dressed", two_t);

    // Assembled (u, v) against the coupled fermionic-limit system.
    for (const int count : {1, 2}) {
        const auto [u, v] = profile(count, count, par);
        const auto [ru, rv] = fermionic_limit_residuals(u, v);
        const std::string label = std::to_string(count) + "-soliton profile";
        rep.add("assembled u zeroes its flow, " + label, ru.is_zero(), ru.num().size());
        rep.add("assembled v zeroes its flow, " + label, rv.is_zero(), rv.num().size());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// First nontrivial flow of the doubly-extended hierarchy and its Miura map.

inline SuperExpr q_flow_residual(const SuperExpr& q) {
    if (q.parity() != Parity::Even) throw grading_error("q_flow_residual: Q must be even");
    const GaussianRational half(Rational(1, 2));
    const GaussianRational tq(Rational(3, 4));
    const SuperExpr qx = d_base(q, Var::X);
    const SuperExpr qt = d_base(q, Var::T);
    const SuperExpr qxxx = d_base(d_base(qx, Var::X), Var::X);
    const SuperExpr d1q = d_cov(q, 1);
    const SuperExpr d2q = d_cov(q, 2);
    const SuperExpr d1qx = d_cov(qx, 1);
    const SuperExpr d2qx = d_cov(qx, 2);
    const SuperExpr d1d2q = d_cov(d2q, 1);
    return qt + qxxx - half * (qx * qx * qx) - tq * (d2qx * d2q * qx) +
           tq * (d2qx * d1q * d1d2q) + tq * (d2q * d1qx * d1d2q) -
           tq * (d1qx * d1q * qx);
}

inline CheckReport check_q_flow(std::uint64_t seed) {
    CheckReport rep;
    rep.case_id = "q-flow";
    rep.add("residual vanishes for Q = 0", q_flow_residual(SuperExpr::zero()).is_zero());
    {
        const SuperExpr t1 = SuperExpr::odd(OddRegistry::kTheta1);
        const SuperExpr t2 = SuperExpr::odd(OddRegistry::kTheta2);
        const SuperExpr q =
            SuperExpr(GaussianRational(5)) - GaussianRational(Rational(2, 3)) * (t1 * t2);
        const SuperExpr r = q_flow_residual(q);
        rep.add("residual vanishes for constant Q", r.is_zero(), r.size());
    }
    // Components of the Miura map in the fermionic limit.
    TauSampler sampler(seed);
    bool comp_ok = true;
    std::size_t resid_terms = 0;
    for (int trial = 0; trial < 5 && comp_ok; ++trial) {
        const SuperExpr q0 = sampler.even_tau(2, 0, {});
        const SuperExpr q12 = sampler.even_tau(2, 0, {});
        const SuperExpr t1 = SuperExpr::odd(OddRegistry::kTheta1);
        const SuperExpr t2 = SuperExpr::odd(OddRegistry::kTheta2);
        const SuperExpr q = q0 - t1 * t2 * q12;
        const GaussianRational half(Rational(1, 2)), quarter(Rational(1, 4));
        const SuperExpr a =
            half * d_cov(d_cov(q, 2), 1) + quarter * (d_cov(q, 2) * d_cov(q, 1));
        const ComponentQuad comp = taylor_components(a);
        const SuperExpr q0x = d_base(q0, Var::X);
        const SuperExpr expected_v =
            quarter * (q12 * q12 + q0x * q0x) - half * d_base(q0x, Var::X);
        const SuperExpr du = comp.u - half * q12;
        const SuperExpr dv = comp.v - expected_v;
        if (!du.is_zero() || !dv.is_zero() || !comp.xi1.is_zero() || !comp.xi2.is_zero()) {
            comp_ok = false;
            resid_terms = du.size() + dv.size();
        }
    }
    rep.add("Miura map components in the fermionic limit", comp_ok, resid_terms);
    return rep;
}

// ---------------------------------------------------------------------------
// N=2 formalism: bilinear form, constraints, and component matching.

namespace detail {

inline GaussianRational coeff_of(const SuperExpr& e, const SuperExpr::Key& k) {
    auto it = e.terms().find(k);
    return it == e.terms().end() ? GaussianRational(0) : it->second;
}

} // namespace detail

// Component matching for one dressed tau slot: finds the scalar relations
// (s, m12) with theta2-dressing s*odd1 and top component m12 that make the
// constraint residual vanish. The residual is bilinear in (s, m12): squares
// die by nilpotency, the cross term survives because the bilinear operators
// strip coordinates. Componentwise the system is triangular: rows free of
// m12 are linear in s, the rest become linear in m12 once s is substituted.
struct N2MatchResult {
    bool multilinear = false;
    bool solved = false;
    GaussianRational s;
    GaussianRational m12;
};

inline N2MatchResult n2_component_match(
    const std::function<SuperExpr(const GaussianRational&, const GaussianRational&)>& resid) {
    N2MatchResult out;
    const GaussianRational zero(0), one(1), two(2);
    const GaussianRational half(Rational(1, 2));
    // Polynomial model R(s, mu) = A + B s + C mu + D s mu + E mu^2,
    // recovered from probe evaluations and then cross-checked.
    const SuperExpr A = resid(zero, zero);
    const SuperExpr B = resid(one, zero) - A;
    const SuperExpr r01 = resid(zero, one) - A;  // C + E
    const SuperExpr r02 = resid(zero, two) - A;  // 2C + 4E
    const SuperExpr E = half * (r02 - two * r01);
    const SuperExpr C = r01 - E;
    const SuperExpr D = resid(one, one) - A - B - C - E;
    out.multilinear =
        resid(two, zero) == A + two * B &&
        resid(two, one) == A + two * B + C + two * D + E &&
        resid(one, two) == A + B + two * C + two * D + GaussianRational(4) * E &&
        resid(two, two) ==
            A + two * B + two * C + GaussianRational(4) * D + GaussianRational(4) * E;
    if (!out.multilinear) return out;

    // Component rows c0 + c1 s + c2 mu + c3 s mu + c4 mu^2 = 0.
    SuperExpr all;
    for (const SuperExpr* e : {&A, &B, &C, &D, &E})
        for (const auto& [k, c] : e->terms()) {
            (void)c;
            all.add_term(k, one);
        }
    struct Row {
        GaussianRational c0, c1, c2, c3, c4;
    };
    std::vector<Row> rows;
    for (const auto& [k, c] : all.terms()) {
        (void)c;
        rows.push_back({detail::coeff_of(A, k), detail::coeff_of(B, k),
                        detail::coeff_of(C, k), detail::coeff_of(D, k),
                        detail::coeff_of(E, k)});
    }

    // s from the rows free of mu, then mu from the rows that become linear,
    // then every remaining (quadratic) row is verified at the solution.
    std::optional<GaussianRational> s;
    for (const auto& r : rows) {
        if (!r.c2.is_zero() || !r.c3.is_zero() || !r.c4.is_zero() || r.c1.is_zero()) continue;
        const GaussianRational cand = -r.c0 / r.c1;
        if (s && !(*s == cand)) return out;
        s = cand;
    }
    if (!s) return out;
    std::optional<GaussianRational> mu;
    for (const auto& r : rows) {
        if (!r.c4.is_zero()) continue;
        const GaussianRational a = r.c0 + r.c1 * *s;
        const GaussianRational b = r.c2 + r.c3 * *s;
        if (b.is_zero()) {
            if (!a.is_zero()) return out;
            continue;
        }
        const GaussianRational cand = -a / b;
        if (mu && !(*mu == cand)) return out;
        mu = cand;
    }
    if (!mu) return out;
    for (const auto& r : rows) {
        const GaussianRational value =
            r.c0 + r.c1 * *s + r.c2 * *mu + r.c3 * *s * *mu + r.c4 * *mu * *mu;
        if (!value.is_zero()) return out;
    }
    out.s = *s;
    out.m12 = *mu;
    out.solved = resid(*s, *mu).is_zero();
    return out;
}

inline CheckReport check_n2(const SolitonParams& par) {
    CheckReport rep;
    rep.case_id = "n2kdv";
    const GaussianRational i = GaussianRational::i();
    const GaussianRational kappa(par.kappa);

    // Jet-level equivalence of the integrated flow with its Bell form.
    {
        const FieldId M = FieldRegistry::kBigM, C = FieldRegistry::kC;
        const BellSlot s1(i, M), s2(GaussianRational(-1), C);
        const JetExpr combo =
            binary_bell(MultiIndex::t(), s1, s2) + binary_bell(MultiIndex::x(3), s1, s2);
        const JetExpr mx3 = jet(M, 1) * jet(M, 1) * jet(M, 1);
        const JetExpr flow = jet(M, 0, 1) + jet(M, 3) -
                             GaussianRational(3) * (jet(M, 1) * jet(C, 2)) - mx3;
        const JetExpr resid = combo - i * flow;
        rep.add("Bell form of the integrated flow", resid.is_zero(), resid.size());
    }

    // Solved ansatz: bilinear flow plus both constraints, exactly.
    SolitonSpec spec;
    spec.kind = SolitonSpec::Kind::DressedOne;
    spec.kappas = {kappa};
    const TauPair tau = build_tau(spec);
    {
        const OperatorCombo flow = {{GaussianRational(1), MultiIndex::t()},
                                    {GaussianRational(1), MultiIndex::x(3)}};
        const SuperExpr r = hirota_poly(tau.f, tau.g, flow);
        rep.add("(Dt+Dx^3)(f.g) = 0 on the solved ansatz", r.is_zero(), r.size());
        const MultiIndex s2s1{0, 0, 0, 1, 1};
        const SuperExpr cf =
            hirota(tau.f, tau.f, s2s1) -
            GaussianRational(2) * i * (tau.f * d_base(tau.f, Var::X));
        rep.add("S2S1(f.f) = 2i f f_x", cf.is_zero(), cf.size());
        const SuperExpr cg =
            hirota(tau.g, tau.g, s2s1) +
            GaussianRational(2) * i * (tau.g * d_base(tau.g, Var::X));
        rep.add("S2S1(g.g) = -2i g g_x", cg.is_zero(), cg.size());
    }

    // Component matching on the raw ansatz: the constraint forces exactly
    // the solved parameter relations.
    {
        const auto resid_f = [&](const GaussianRational& s, const GaussianRational& m12) {
            const SuperExpr f = dressed_tau(GaussianRational(1), kappa, OddRegistry::kZeta1,
                                            s, m12);
            return hirota(f, f, MultiIndex{0, 0, 0, 1, 1}) -
                   GaussianRational(2) * i * (f * d_base(f, Var::X));
        };
        const N2MatchResult mf = n2_component_match(resid_f);
        const bool okf = mf.multilinear && mf.solved && mf.s == -i && mf.m12 == i * kappa;
        rep.add("component matching forces zeta2 = -i zeta1, m12 = i kappa", okf, 0,
                mf.solved ? "s=" + to_string(mf.s) + ", m12=" + to_string(mf.m12)
                          : "no unique solution");
    }
    {
        const auto resid_g = [&](const GaussianRational& s, const GaussianRational& m12) {
            const SuperExpr g =
                dressed_tau(GaussianRational(1), kappa, OddRegistry::kNu1, s, m12);
            return hirota(g, g, MultiIndex{0, 0, 0, 1, 1}) +
                   GaussianRational(2) * i * (g * d_base(g, Var::X));
        };
        const N2MatchResult mg = n2_component_match(resid_g);
        const bool okg = mg.multilinear && mg.solved && mg.s == i && mg.m12 == -(i * kappa);
        rep.add("component matching forces nu2 = i nu1, n12 = -i kappa", okg, 0,
                mg.solved ? "s=" + to_string(mg.s) + ", n12=" + to_string(mg.m12)
                          : "no unique solution");
    }

    // Superfield components, two routes: Taylor components of -i d/dx ln(f/g)
    // versus the closed forms built from the body log-derivatives.
    {
        const SuperFraction a_field =
            ((-i) * (log_derivative(tau.f, MultiIndex::x()) -
                     log_derivative(tau.g, MultiIndex::x())))
                .rationalized();
        const auto with_den = [&a_field](const SuperExpr& num) {
            SuperFraction r(num);
            for (const auto& [fac, k] : a_field.den_factors())
                for (int j = 0; j < k; ++j) r = r / SuperFraction(fac);
            return r;
        };
        const GrassmannMonomial t1 = GrassmannMonomial::single(OddRegistry::kTheta1);
        const GrassmannMonomial t2 = GrassmannMonomial::single(OddRegistry::kTheta2);
        GrassmannMonomial t12;
        grassmann_mul(t1, t2, t12);
        const SuperFraction comp_u = with_den(extract_component(a_field.num(), {}));
        const SuperFraction comp_xi1 = with_den(extract_component(a_field.num(), t1));
        const SuperFraction comp_xi2 = with_den(extract_component(a_field.num(), t2));
        const SuperFraction comp_v = -with_den(extract_component(a_field.num(), t12));

        const SuperExpr bf = tau.f.body();
        const SuperExpr bg = tau.g.body();
        const SuperExpr eta = SuperExpr::exp_phase(soliton_phase(kappa));
        const SuperFraction f0x = log_derivative(bf, MultiIndex::x());
        const SuperFraction g0x = log_derivative(bg, MultiIndex::x());
        const SuperFraction f1(eta * SuperExpr::odd(OddRegistry::kZeta1), bf);
        const SuperFraction g1(eta * SuperExpr::odd(OddRegistry::kNu1), bg);
        const SuperFraction f1x = f1.derive(Deriv::Dx);
        const SuperFraction g1x = g1.derive(Deriv::Dx);

        const bool ok_u = comp_u == i * (g0x - f0x);
        const bool ok_xi1 = comp_xi1 == i * (g1x - f1x);
        const bool ok_xi2 = comp_xi2 == -(f1x + g1x);
        const bool ok_v =
            comp_v == -(f0x.derive(Deriv::Dx) + g0x.derive(Deriv::Dx));
        rep.add("superfield components match the log-derivative closed forms",
                ok_u && ok_xi1 && ok_xi2 && ok_v);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Potential Burgers extension: Bell form with a formal parameter and the
// constraint split.

inline CheckReport check_burgers(std::uint64_t seed) {
    CheckReport rep;
    rep.case_id = "burgers";
    const FieldId M = FieldRegistry::kBigM, C = FieldRegistry::kC;
    const FieldId LAM = FieldRegistry::kLam;
    const JetExpr lam = jet(LAM);
    const GaussianRational half(Rational(1, 2));

    const BellSlot s1(lam, M);
    const BellSlot s2(GaussianRational(2) * (lam * lam), C);
    const JetExpr lhs = GaussianRational(2) * lam * binary_bell(MultiIndex::t(), s1, s2) -
                        binary_bell(MultiIndex::x(2), s1, s2);
    const JetExpr flow = jet(M, 0, 1) - jet(C, 2) - half * (jet(M, 1) * jet(M, 1));
    const JetExpr rhs = GaussianRational(2) * (lam * lam) * flow;
    const JetExpr resid = lhs - rhs;
    rep.add("Bell form with formal lambda", resid.is_zero(), resid.size());

    const JetExpr lhs0 = subst_constant(lhs, LAM, GaussianRational(0));
    const JetExpr rhs0 = subst_constant(rhs, LAM, GaussianRational(0));
    rep.add("lambda = 0 is degenerate (identity collapses to 0 = 0); skipped",
            lhs0.is_zero() && rhs0.is_zero(), lhs0.size() + rhs0.size());

    // Constraint split: S2S1(f.f) = 4 lambda f f_x is the bilinear form of
    // D2 D1 ln f = 2 lambda dx ln f, through the identity
    // S2S1(f.f) = 2 f^2 D2 D1 ln f.
    TauSampler sampler(seed);
    bool split_ok = true;
    for (int trial = 0; trial < 8 && split_ok; ++trial) {
        const SuperExpr f =
            sampler.even_tau(2, 2, {OddRegistry::kZeta1, OddRegistry::kZeta2});
        GaussianRational lv(sampler.small_rational());
        if (lv.is_zero()) lv = GaussianRational(Rational(1, 2));
        const SuperExpr bili = hirota(f, f, MultiIndex{0, 0, 0, 1, 1}) -
                               GaussianRational(4) * lv * (f * d_base(f, Var::X));
        const SuperFraction logside =
            log_derivative(f, MultiIndex{0, 0, 0, 1, 1}) -
            GaussianRational(2) * lv * log_derivative(f, MultiIndex::x());
        const SuperFraction diff =
            SuperFraction(bili) - SuperFraction(GaussianRational(2) * (f * f)) * logside;
        split_ok = diff.is_zero();
    }
    rep.add("constraint split equivalent to the log-derivative relation", split_ok);

    const JetExpr rhs_mut =
        GaussianRational(2) * (lam * lam) *
        (jet(M, 0, 1) - jet(C, 2) - (jet(M, 1) * jet(M, 1)));
    const JetExpr mut = lhs - rhs_mut;
    rep.add("mutation control (1/2 -> 1 in M_x^2)", !mut.is_zero(), mut.size());

    // The bilinear pair implies the flow: the Bell identity above, the
    // Bell<->Hirota link at the t and xx indices, and the constraint split
    // chain together. The link instances are verified on sampled pairs.
    bool link_ok = true;
    for (int trial = 0; trial < 4 && link_ok; ++trial) {
        const SuperExpr f = sampler.even_tau(2, 1, {OddRegistry::kZeta1});
        const SuperExpr g = sampler.even_tau(2, 1, {OddRegistry::kZeta2});
        link_ok = link_check(f, g, MultiIndex::t()).equal &&
                  link_check(f, g, MultiIndex::x(2)).equal;
    }
    rep.add("bilinear pair implies the flow (link instances + split + Bell form)",
            link_ok && split_ok && resid.is_zero());
    return rep;
}

// ---------------------------------------------------------------------------
// Randomized Bell <-> Hirota link sweep.

inline CheckReport check_bell_link(std::uint64_t seed, int n_pairs = 20) {
    CheckReport rep;
    rep.case_id = "bell-link";
    TauSampler sampler(seed);
    std::vector<std::pair<SuperExpr, SuperExpr>> pairs;
    pairs.reserve(n_pairs);
    for (int k = 0; k < n_pairs; ++k)
        pairs.emplace_back(
            sampler.even_tau(2, 2, {OddRegistry::kZeta1, OddRegistry::kZeta2}),
            sampler.even_tau(2, 2, {OddRegistry::kNu1, OddRegistry::kNu2}));
    for (int k1 = 0; k1 <= 1; ++k1) {
        for (int kx = 0; kx <= 3; ++kx) {
            for (int kt = 0; kx + kt <= 3; ++kt) {
                const MultiIndex idx{kx, kt, 0, k1, 0};
                if (idx.total_order() < 1) continue;
                int fails = 0;
                for (const auto& [f, g] : pairs)
                    if (!link_check(f, g, idx).equal) ++fails;
                rep.add("link identity at index (" + to_string(idx) + ")", fails == 0,
                        static_cast<std::size_t>(fails),
                        std::to_string(n_pairs - fails) + "/" + std::to_string(n_pairs) +
                            " pairs");
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Case dispatch shared by the CLI and the acceptance suite.

inline std::vector<CheckReport> run_case(CaseId id, const SolitonParams& par,
                                         std::uint64_t seed) {
    switch (id) {
        case CaseId::A1: return {check_a1()};
        case CaseId::A4: return {check_two_boson(), solve_a4_coefficients().report};
        case CaseId::TwoBoson: return {check_two_boson()};
        case CaseId::Am2:
            return {check_am2_chain(par), check_miura(par), check_q_flow(seed)};
        case CaseId::Miura: return {check_miura(par)};
        case CaseId::QFlow: return {check_q_flow(seed)};
        case CaseId::N2Kdv: return {check_n2(par)};
        case CaseId::Burgers: return {check_burgers(seed)};
        case CaseId::BellLink: return {check_bell_link(seed)};
    }
    throw error("run_case: bad case");
}

} // namespace skdv
