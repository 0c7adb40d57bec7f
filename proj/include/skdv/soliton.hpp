#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "skdv/fraction.hpp"
#include "skdv/super_expr.hpp"

namespace skdv {

// Wave numbers for the profile families; defaults are the choices used for
// the reference figures.
struct SolitonParams {
    Rational kappa{1};
    Rational kappa_tilde{4, 5};
    Rational kappa1{3, 5};
    Rational kappa2{1, 2};
    Rational kappa_tilde1{3, 4};
    Rational kappa_tilde2{2, 3};
};

struct TauPair {
    SuperExpr f;
    SuperExpr g;
};

// Travelling-wave phase eta = kappa x - kappa^3 t.
inline Phase soliton_phase(const GaussianRational& kappa) {
    Phase p{};
    p[static_cast<std::size_t>(Var::X)] = to_g64(kappa);
    p[static_cast<std::size_t>(Var::T)] = to_g64(-(kappa * kappa * kappa));
    return p;
}

// Interaction coefficient ((k1-k2)/(k1+k2))^2; k1+k2 must not vanish.
inline GaussianRational interaction_coefficient(const GaussianRational& k1,
                                                const GaussianRational& k2) {
    const GaussianRational sum = k1 + k2;
    if (sum.is_zero()) throw division_error("two-soliton interaction: kappa1 + kappa2 = 0");
    const GaussianRational r = (k1 - k2) / sum;
    return r * r;
}

// Tau-function ansatz descriptions. `tilde` selects the +-i dressed family.
struct SolitonSpec {
    enum class Kind { One, Two, DressedOne };
    Kind kind = Kind::One;
    bool tilde = false;
    std::vector<GaussianRational> kappas;   // 1 or 2 wave numbers
    GaussianRational amp_a{1};              // DressedOne amplitudes
    GaussianRational amp_b{1};
};

namespace detail {

// 1 + theta1*z1 + theta2*z2 + theta1*theta2*m12 with z1 = odd1,
// z2 = s * odd1, expanded from the exponential of the nilpotent exponent.
inline SuperExpr dressing(GenId odd1, const GaussianRational& s, const GaussianRational& m12) {
    const SuperExpr t1 = SuperExpr::odd(OddRegistry::kTheta1);
    const SuperExpr t2 = SuperExpr::odd(OddRegistry::kTheta2);
    const SuperExpr z = SuperExpr::odd(odd1);
    return (SuperExpr::one() + t1 * z) * (SuperExpr::one() + t2 * (s * z)) *
           (SuperExpr::one() + m12 * (t1 * t2));
}

} // namespace detail

// Dressed one-soliton tau function 1 + amp * e^{eta} * X with the nilpotent
// exponent expanded exactly. Leaving (s, m12) free parameterizes the raw
// ansatz; the solved values are s = -i, m12 = i*kappa for the f-slot and
// s = i, m12 = -i*kappa for the g-slot.
inline SuperExpr dressed_tau(const GaussianRational& amp, const GaussianRational& kappa,
                             GenId odd1, const GaussianRational& s,
                             const GaussianRational& m12) {
    return SuperExpr::one() +
           amp * SuperExpr::exp_phase(soliton_phase(kappa)) * detail::dressing(odd1, s, m12);
}

inline TauPair build_tau(const SolitonSpec& spec) {
    const GaussianRational i = GaussianRational::i();
    switch (spec.kind) {
        case SolitonSpec::Kind::One: {
            if (spec.kappas.size() != 1) throw error("build_tau: one wave number expected");
            const SuperExpr e = SuperExpr::exp_phase(soliton_phase(spec.kappas[0]));
            if (spec.tilde)
                return {SuperExpr::one() + i * e, SuperExpr::one() - i * e};
            return {SuperExpr::one() + e, SuperExpr::one() - e};
        }
        case SolitonSpec::Kind::Two: {
            if (spec.kappas.size() != 2) throw error("build_tau: two wave numbers expected");
            const GaussianRational a12 = interaction_coefficient(spec.kappas[0], spec.kappas[1]);
            const SuperExpr e1 = SuperExpr::exp_phase(soliton_phase(spec.kappas[0]));
            const SuperExpr e2 = SuperExpr::exp_phase(soliton_phase(spec.kappas[1]));
            const SuperExpr e12 = e1 * e2;
            if (spec.tilde) {
                const SuperExpr f =
                    SuperExpr::one() + i * e1 + i * e2 - a12 * e12;
                const SuperExpr g =
                    SuperExpr::one() - i * e1 - i * e2 - a12 * e12;
                return {f, g};
            }
            return {SuperExpr::one() + e1 + e2 + a12 * e12,
                    SuperExpr::one() - e1 - e2 + a12 * e12};
        }
        case SolitonSpec::Kind::DressedOne: {
            if (spec.kappas.size() != 1) throw error("build_tau: one wave number expected");
            const GaussianRational k = spec.kappas[0];
            return {dressed_tau(spec.amp_a, k, OddRegistry::kZeta1, -i, i * k),
                    dressed_tau(spec.amp_b, k, OddRegistry::kNu1, i, -(i * k))};
        }
    }
    throw error("build_tau: bad spec");
}

// d/dx ln(f/g) as an exact fraction.
inline SuperFraction dlog_ratio_x(const TauPair& p, int order = 1) {
    MultiIndex idx = MultiIndex::x(order);
    return log_derivative(p.f, idx) - log_derivative(p.g, idx);
}

// u = -i d/dx ln(ft/gt); depends only on the dressed pair.
inline SuperFraction profile_u(const TauPair& tilde) {
    return (-GaussianRational::i() * dlog_ratio_x(tilde)).simplified();
}

// v = (d/dx ln f/g)^2 - (d/dx ln ft/gt)^2 - d^2/dx^2 ln(f/g). The combination
// cancels the zero-crossing tau factor g exactly, which keeps the denominator
// clear of real zeros; simplified() performs that cancellation.
inline SuperFraction profile_v(const TauPair& plain, const TauPair& tilde) {
    const SuperFraction phix = dlog_ratio_x(plain);
    const SuperFraction psix = dlog_ratio_x(tilde);
    const SuperFraction phixx = dlog_ratio_x(plain, 2);
    return (phix * phix - psix * psix - phixx).simplified();
}

// Profile u_(m,n) / v_(m,n) from the soliton counts m, n in {1, 2}.
inline std::pair<SuperFraction, SuperFraction> profile(int m, int n, const SolitonParams& par) {
    const auto pick = [&par](int count, bool tilde) {
        SolitonSpec spec;
        spec.tilde = tilde;
        if (count == 1) {
            spec.kind = SolitonSpec::Kind::One;
            spec.kappas = {GaussianRational(tilde ? par.kappa_tilde : par.kappa)};
        } else if (count == 2) {
            spec.kind = SolitonSpec::Kind::Two;
            if (tilde)
                spec.kappas = {GaussianRational(par.kappa_tilde1),
                               GaussianRational(par.kappa_tilde2)};
            else
                spec.kappas = {GaussianRational(par.kappa1), GaussianRational(par.kappa2)};
        } else {
            throw error("profile: soliton count must be 1 or 2");
        }
        return build_tau(spec);
    };
    const TauPair plain = pick(m, false);
    const TauPair tilde = pick(n, true);
    return {profile_u(tilde), profile_v(plain, tilde)};
}

// ---------------------------------------------------------------------------
// Numeric grid evaluation.

struct GridSpec {
    double x_min = -20.0;
    double x_max = 20.0;
    int samples = 801;
    std::vector<double> times{-2.0, 0.0, 2.0};

    void validate() const {
        if (samples < 2) throw error("grid: samples must be >= 2");
        if (!(x_min < x_max)) throw error("grid: x-min must be below x-max");
        if (times.empty()) throw error("grid: at least one time required");
    }
};

struct GridRow {
    double x;
    double t;
    double value;
};
using GridTable = std::vector<GridRow>;

inline constexpr double kImagTolerance = 1e-9;
inline constexpr double kDenFloor = 1e-12;

// Evaluates numerator and denominator separately in complex double
// precision, divides last, and insists the result is real.
inline double eval_fraction_at(const SuperFraction& expr, double x, double t) {
    std::array<double, kNumVars> vals{};
    vals[static_cast<std::size_t>(Var::X)] = x;
    vals[static_cast<std::size_t>(Var::T)] = t;
    const std::complex<double> num = eval_numeric(expr.num(), vals);
    std::complex<double> den(1.0, 0.0);
    for (const auto& [f, k] : expr.den_factors()) {
        const std::complex<double> fv = eval_numeric(f, vals);
        for (int j = 0; j < k; ++j) den *= fv;
    }
    if (std::abs(den) < kDenFloor)
        throw singularity_error("denominator underflow at x=" + std::to_string(x) +
                                ", t=" + std::to_string(t));
    const std::complex<double> val = num / den;
    if (std::abs(val.imag()) >= kImagTolerance)
        throw error("imaginary residue " + std::to_string(val.imag()) + " at x=" +
                    std::to_string(x) + ", t=" + std::to_string(t));
    return val.real();
}

inline GridTable eval_grid(const SuperFraction& expr, const GridSpec& grid) {
    grid.validate();
    if (!expr.num().grassmann_free())
        throw grading_error("eval_grid: expression has Grassmann support");
    for (const auto& [f, k] : expr.den_factors()) {
        (void)k;
        if (!f.grassmann_free())
            throw grading_error("eval_grid: denominator has Grassmann support");
    }
    GridTable table;
    table.reserve(static_cast<std::size_t>(grid.samples) * grid.times.size());
    const double step = (grid.x_max - grid.x_min) / (grid.samples - 1);
    for (double t : grid.times) {
        for (int k = 0; k < grid.samples; ++k) {
            const double x = grid.x_min + step * k;
            table.push_back({x, t, eval_fraction_at(expr, x, t)});
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Output: CSV with 12 significant digits, and a gnuplot script drawing one
// curve per time slice from that CSV.

inline std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void emit_csv(const GridTable& table, std::ostream& os) {
    os << "x,t,value\n";
    for (const auto& row : table)
        os << format_sig12(row.x) << "," << format_sig12(row.t) << ","
           << format_sig12(row.value) << "\n";
}

inline void emit_plot_script(const std::string& csv_path, const std::vector<double>& times,
                             const std::string& title, std::ostream& os) {
    os << "# gnuplot script; run: gnuplot -persist <this file>\n";
    os << "set datafile separator comma\n";
    os << "set grid\n";
    os << "set xlabel 'x'\n";
    os << "set title '" << title << "'\n";
    os << "plot \\\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        const std::string t = format_sig12(times[k]);
        os << "  '" << csv_path << "' using 1:($2==" << t << "?$3:1/0) with lines title 't="
           << t << "'" << (k + 1 < times.size() ? ", \\" : "") << "\n";
    }
}

} // namespace skdv
