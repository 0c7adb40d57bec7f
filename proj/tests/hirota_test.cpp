#include <catch2/catch_amalgamated.hpp>

#include "skdv/hirota.hpp"
#include "skdv/soliton.hpp"
#include "support/doubled_hirota.hpp"
#include "support/generators.hpp"

using namespace skdv;
using skdv_test::ExprGen;
using skdv_test::oracle_hirota;

namespace {

Phase pure_x(const GaussianRational& c) {
    Phase p{};
    p[static_cast<std::size_t>(Var::X)] = to_g64(c);
    return p;
}

} // namespace

TEST_CASE("bilinear derivative on exponentials") {
    const SuperExpr e2x = SuperExpr::exp_phase(pure_x(GaussianRational(2)));
    const SuperExpr ex = SuperExpr::exp_phase(pure_x(GaussianRational(1)));
    const SuperExpr e3x = SuperExpr::exp_phase(pure_x(GaussianRational(3)));
    CHECK(hirota(e2x, ex, MultiIndex::x()) == e3x);
}

TEST_CASE("odd-order action on even f.f vanishes") {
    ExprGen gen(0x0DD);
    const auto gens = skdv_test::standard_gens();
    for (int trial = 0; trial < 50; ++trial) {
        // Antisymmetry needs a homogeneous even argument; tau functions are
        // bosonic throughout.
        const SuperExpr f = gen.expr(5, gens, 2).even_part();
        CHECK(hirota(f, f, MultiIndex::x()).is_zero());
        CHECK(hirota(f, f, MultiIndex::x(3)).is_zero());
        CHECK(hirota(f, f, MultiIndex::t()).is_zero());
    }
}

TEST_CASE("single odd step") {
    const SuperExpr t1 = SuperExpr::odd(OddRegistry::kTheta1);
    CHECK(hirota(t1, SuperExpr::one(), MultiIndex::d1()) == SuperExpr::one());
}

TEST_CASE("one-soliton pair solves the flow bilinear form") {
    SolitonSpec spec;
    spec.kappas = {GaussianRational(1)};
    const TauPair tau = build_tau(spec);
    const OperatorCombo combo = {{GaussianRational(1), MultiIndex::t()},
                                 {GaussianRational(1), MultiIndex::x(3)}};
    CHECK(hirota_poly(tau.f, tau.g, combo).is_zero());
}

TEST_CASE("operator polynomial on two exponentials is dispersion arithmetic") {
    const GaussianRational k1(Rational(3, 5)), k2(Rational(1, 2));
    const SuperExpr e1 = SuperExpr::exp_phase(soliton_phase(k1));
    const SuperExpr e2 = SuperExpr::exp_phase(soliton_phase(k2));
    const OperatorCombo combo = {{GaussianRational(1), MultiIndex::t()},
                                 {GaussianRational(1), MultiIndex::x(3)}};
    const GaussianRational d = k1 - k2;
    const GaussianRational expected_coeff =
        -(k1 * k1 * k1) + k2 * k2 * k2 + d * d * d;
    CHECK(hirota_poly(e1, e2, combo) == expected_coeff * (e1 * e2));
}

TEST_CASE("even operators of odd total order drop out on f.f") {
    ExprGen gen(0x0FF);
    const auto gens = skdv_test::standard_gens();
    for (int trial = 0; trial < 30; ++trial) {
        const SuperExpr f = gen.expr(4, gens, 2).even_part() + SuperExpr::one();
        const OperatorCombo combo = {{GaussianRational(1), MultiIndex::t2()},
                                     {GaussianRational(-1), MultiIndex::x(2)}};
        CHECK(hirota_poly(f, f, combo) == -hirota(f, f, MultiIndex::x(2)));
    }
    const OperatorCombo c2 = {{GaussianRational(Rational(7, 3)), MultiIndex::t()},
                              {GaussianRational(-1), MultiIndex::x(2)}};
    CHECK(hirota_poly(SuperExpr::one(), SuperExpr::one(), c2).is_zero());
}

TEST_CASE("recursive expansion agrees with the doubled-coordinate oracle", "[property]") {
    ExprGen gen(0x0AC1E);
    const auto gens = skdv_test::standard_gens();
    const std::vector<MultiIndex> idxs = {
        MultiIndex::x(),         MultiIndex::t(),          MultiIndex::x(2),
        MultiIndex::x(3),        MultiIndex{1, 1, 0, 0, 0}, MultiIndex{0, 0, 2, 0, 0},
        MultiIndex::d1(),        MultiIndex::d2(),         MultiIndex{0, 0, 0, 1, 1},
        MultiIndex{1, 0, 0, 1, 0}, MultiIndex{2, 0, 0, 1, 1}, MultiIndex{1, 1, 1, 1, 1},
    };
    for (int trial = 0; trial < 40; ++trial) {
        const SuperExpr f = gen.expr(4, gens, 2);
        const SuperExpr g = gen.expr(4, gens, 2);
        for (const auto& idx : idxs)
            CHECK(hirota(f, g, idx) == oracle_hirota(f, g, idx));
    }
}

TEST_CASE("exponential shift property", "[property]") {
    ExprGen gen(0x5117);
    for (int trial = 0; trial < 100; ++trial) {
        Phase p1{}, p2{};
        GaussianRational c1(Rational(gen.pick(-3, 3), gen.pick(1, 3)));
        GaussianRational c2(Rational(gen.pick(-3, 3), gen.pick(1, 3)));
        GaussianRational ct1(Rational(gen.pick(-2, 2), gen.pick(1, 2)));
        GaussianRational ct2(Rational(gen.pick(-2, 2), gen.pick(1, 2)));
        p1[0] = to_g64(c1);
        p1[1] = to_g64(ct1);
        p2[0] = to_g64(c2);
        p2[1] = to_g64(ct2);
        const SuperExpr e1 = SuperExpr::exp_phase(p1);
        const SuperExpr e2 = SuperExpr::exp_phase(p2);
        const int kx = gen.pick(0, 3), kt = gen.pick(0, 2);
        const MultiIndex idx{kx, kt, 0, 0, 0};
        // P(eta1 - eta2) e^{eta1+eta2} with P the operator monomial.
        GaussianRational coeff(1);
        for (int k = 0; k < kx; ++k) coeff *= (c1 - c2);
        for (int k = 0; k < kt; ++k) coeff *= (ct1 - ct2);
        CHECK(hirota(e1, e2, idx) == coeff * (e1 * e2));
        CHECK(oracle_hirota(e1, e2, idx) == coeff * (e1 * e2));
    }
}

TEST_CASE("S2 S1 on f.f splits into covariant derivatives", "[property]") {
    ExprGen gen(0x2551);
    const auto gens = skdv_test::standard_gens();
    const MultiIndex s2s1{0, 0, 0, 1, 1};
    for (int trial = 0; trial < 200; ++trial) {
        const SuperExpr f = gen.expr(4, gens, 2).even_part() + SuperExpr::one();
        const SuperExpr lhs = hirota(f, f, s2s1);
        const SuperExpr rhs =
            GaussianRational(2) * (f * d_cov(d_cov(f, 1), 2)) +
            GaussianRational(2) * (d_cov(f, 1) * d_cov(f, 2));
        CHECK(lhs == rhs);
        CHECK(oracle_hirota(f, f, s2s1) == rhs);
    }
}

TEST_CASE("bilinearity in both slots", "[property]") {
    ExprGen gen(0xB111);
    const auto gens = skdv_test::standard_gens();
    for (int trial = 0; trial < 60; ++trial) {
        const SuperExpr f1 = gen.expr(3, gens, 2);
        const SuperExpr f2 = gen.expr(3, gens, 2);
        const SuperExpr g = gen.expr(3, gens, 2);
        const GaussianRational c = gen.coeff();
        const MultiIndex idx{gen.pick(0, 2), 0, 0, gen.pick(0, 1), gen.pick(0, 1)};
        CHECK(hirota(f1 + c * f2, g, idx) ==
              hirota(f1, g, idx) + c * hirota(f2, g, idx));
        CHECK(hirota(g, f1 + c * f2, idx) ==
              hirota(g, f1, idx) + c * hirota(g, f2, idx));
    }
}

TEST_CASE("operator string parsing") {
    {
        const OperatorCombo c = parse_operator("Dt+Dx^3");
        REQUIRE(c.size() == 2);
        CHECK(c[0].second == MultiIndex::t());
        CHECK(c[1].second == MultiIndex::x(3));
        CHECK(c[0].first == GaussianRational(1));
    }
    {
        const OperatorCombo c = parse_operator("S1(Dt+Dx^3)");
        REQUIRE(c.size() == 2);
        CHECK(c[0].second == (MultiIndex{0, 1, 0, 1, 0}));
        CHECK(c[1].second == (MultiIndex{3, 0, 0, 1, 0}));
    }
    {
        const OperatorCombo c = parse_operator("Dt2-Dx^2");
        REQUIRE(c.size() == 2);
        CHECK(c[1].first == GaussianRational(-1));
        CHECK(c[1].second == MultiIndex::x(2));
    }
    {
        const OperatorCombo c = parse_operator("Dt + 1/4*Dx^3 + 3/4*Dx*Dt2");
        REQUIRE(c.size() == 3);
        CHECK(c[1].first == GaussianRational(Rational(1, 4)));
        CHECK(c[2].first == GaussianRational(Rational(3, 4)));
        CHECK(c[2].second == (MultiIndex{1, 0, 1, 0, 0}));
    }
    {
        const OperatorCombo c = parse_operator("2i*Dx");
        REQUIRE(c.size() == 1);
        CHECK(c[0].first == GaussianRational(Rational(0), Rational(2)));
    }
    CHECK_THROWS_AS(parse_operator("Dy"), parse_error);
    CHECK_THROWS_AS(parse_operator("Dx+"), parse_error);
    CHECK_THROWS_AS(parse_operator("S1(Dx"), parse_error);
}

TEST_CASE("parsed operators evaluate like hand-built combos") {
    SolitonSpec spec;
    spec.kappas = {GaussianRational(Rational(4, 5))};
    spec.tilde = true;
    const TauPair tau = build_tau(spec);
    CHECK(hirota_poly(tau.f, tau.g, parse_operator("Dt+Dx^3")).is_zero());
    CHECK(hirota_poly(tau.f, tau.g, parse_operator("Dx^2")).is_zero());
}
