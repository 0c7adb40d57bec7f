#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "skdv/calculus.hpp"
#include "skdv/multi_index.hpp"
#include "skdv/super_expr.hpp"

namespace skdv {

// Exact division of `num` by a Grassmann-free even `den`, by leading-term
// elimination in each Grassmann sector. Returns nothing when the division
// does not come out exact. Exactness bounds the quotient from below: within
// each sector every quotient monomial lies in [min(num)-min(den),
// max(num)-max(den)], because extremal terms of a product cannot cancel;
// a quotient term below that floor aborts the division.
inline std::optional<SuperExpr> try_divide(const SuperExpr& num, const SuperExpr& den) {
    if (den.is_zero()) throw division_error("try_divide: zero divisor");
    if (!den.grassmann_free() || den.parity() != Parity::Even) return std::nullopt;
    if (num.is_zero()) return SuperExpr::zero();

    const auto& dt = den.terms();
    const auto& dlead = *dt.rbegin();
    const auto& dmin = *dt.begin();

    // Per-sector quotient floor: min(num sector) - min(den).
    std::map<std::uint64_t, EvenMonomial> floor;
    for (const auto& [key, c] : num.terms()) {
        (void)c;
        if (floor.count(key.odd.mask)) continue;  // first = minimal (sorted)
        EvenMonomial f;
        bool valid = true;
        for (std::size_t k = 0; k < kNumVars; ++k) {
            f.phase[k] = key.even.phase[k] - dmin.first.even.phase[k];
            f.powers[k] = key.even.powers[k] - dmin.first.even.powers[k];
            if (f.powers[k] < 0) valid = false;
        }
        if (!valid) return std::nullopt;
        floor.emplace(key.odd.mask, f);
    }

    SuperExpr rem = num;
    SuperExpr quotient;
    std::size_t steps = 0;
    const std::size_t cap = 4096 + 16 * num.size();
    while (!rem.is_zero()) {
        if (++steps > cap) return std::nullopt;
        const auto& rlead = *rem.terms().rbegin();
        EvenMonomial q;
        for (std::size_t k = 0; k < kNumVars; ++k) {
            q.phase[k] = rlead.first.even.phase[k] - dlead.first.even.phase[k];
            q.powers[k] = rlead.first.even.powers[k] - dlead.first.even.powers[k];
            if (q.powers[k] < 0) return std::nullopt;
        }
        const auto fl = floor.find(rlead.first.odd.mask);
        if (fl == floor.end() || EvenMonomial::cmp_even(q, fl->second) < 0)
            return std::nullopt;
        const SuperExpr qterm =
            SuperExpr::term(rlead.second / dlead.second, q, rlead.first.odd);
        quotient += qterm;
        rem -= qterm * den;
    }
    return quotient;
}

// Quotient of expressions with an even, body-nonzero denominator, stored as
// numerator over a product of powers of denominator factors. Keeping the
// factors separate means derivatives and sums never expand products of tau
// functions in the denominator.
class SuperFraction {
public:
    using DenFactors = std::map<SuperExpr, int>;

    SuperFraction() = default;
    SuperFraction(SuperExpr num) : num_(std::move(num)) {}   // NOLINT(google-explicit-constructor)
    SuperFraction(long long n) : num_(SuperExpr(n)) {}       // NOLINT(google-explicit-constructor)
    SuperFraction(const GaussianRational& c) : num_(SuperExpr(c)) {}  // NOLINT

    SuperFraction(SuperExpr num, const SuperExpr& den) : num_(std::move(num)) {
        push_den(den, 1);
        if (num_.is_zero()) den_.clear();
    }

    static SuperFraction zero() { return {}; }
    static SuperFraction one() { return SuperFraction(SuperExpr::one()); }

    const SuperExpr& num() const { return num_; }
    const DenFactors& den_factors() const { return den_; }

    SuperExpr den_expanded() const {
        SuperExpr d = SuperExpr::one();
        for (const auto& [f, k] : den_)
            for (int j = 0; j < k; ++j) d = d * f;
        return d;
    }

    bool is_zero() const { return num_.is_zero(); }

    Parity parity() const { return num_.parity(); }

    SuperFraction operator-() const {
        SuperFraction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend SuperFraction operator+(const SuperFraction& a, const SuperFraction& b) {
        SuperFraction r;
        DenFactors common = a.den_;
        for (const auto& [f, k] : b.den_) {
            auto it = common.find(f);
            if (it == common.end())
                common.emplace(f, k);
            else if (it->second < k)
                it->second = k;
        }
        SuperExpr na = a.num_ * a.cofactor(common);
        SuperExpr nb = b.num_ * b.cofactor(common);
        r.num_ = na + nb;
        r.den_ = std::move(common);
        r.normalize();
        return r;
    }
    friend SuperFraction operator-(const SuperFraction& a, const SuperFraction& b) {
        return a + (-b);
    }

    friend SuperFraction operator*(const SuperFraction& a, const SuperFraction& b) {
        SuperFraction r;
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_;
        for (const auto& [f, k] : b.den_) r.den_[f] += k;
        r.normalize();
        return r;
    }
    friend SuperFraction operator*(const GaussianRational& s, const SuperFraction& a) {
        SuperFraction r = a;
        r.num_ = s * r.num_;
        if (r.num_.is_zero()) r.den_.clear();
        return r;
    }
    friend SuperFraction operator*(const SuperFraction& a, const GaussianRational& s) {
        return s * a;
    }

    friend SuperFraction operator/(const SuperFraction& a, const SuperFraction& b) {
        if (b.is_zero()) throw division_error("division by zero fraction");
        SuperFraction r;
        r.num_ = a.num_ * b.den_expanded();
        r.den_ = a.den_;
        r.push_den(b.num_, 1);
        r.normalize();
        return r;
    }

    // Equality by cross-multiplication; denominators are invertible (even
    // with nonzero body), hence cancellable.
    bool equals(const SuperFraction& o) const { return (*this - o).is_zero(); }
    friend bool operator==(const SuperFraction& a, const SuperFraction& b) { return a.equals(b); }

    // Derivative by the quotient rule. For an odd derivation D and an even
    // denominator d the rule picks up a grading sign on the second term:
    //   D(n/d) = (Dn)/d - (-1)^{|n|} n (Dd) / d^2   (n homogeneous).
    // Worked example, n = theta1, d = f even:
    //   D1(theta1 * f^-1) = (D1 theta1) f^-1 + (-1)^{|theta1|} theta1 D1(f^-1)
    //                     = 1/f - theta1 (-(D1 f) f^-2) = 1/f + theta1 (D1 f)/f^2,
    // which is the formula with |n| = 1.
    SuperFraction derive(Deriv d) const {
        SuperFraction r;
        // Common denominator: every factor exponent raised by one.
        SuperExpr all = SuperExpr::one();           // product of each factor once
        for (const auto& [f, k] : den_) all = all * f;
        SuperExpr dn = apply_deriv(num_, d);
        SuperExpr den_deriv = SuperExpr::zero();    // sum_i k_i (D f_i) prod_{j!=i} f_j
        for (const auto& [f, k] : den_) {
            SuperExpr cof = SuperExpr::one();
            for (const auto& [g, l] : den_) {
                if (&g == &f) continue;
                cof = cof * g;
            }
            den_deriv += GaussianRational(k) * (apply_deriv(f, d) * cof);
        }
        if (deriv_is_odd(d)) {
            const SuperExpr signed_num = num_.odd_part() - num_.even_part();
            r.num_ = dn * all + signed_num * den_deriv;
        } else {
            r.num_ = dn * all - num_ * den_deriv;
        }
        r.den_ = den_;
        for (auto& [f, k] : r.den_) ++k;
        r.normalize();
        return r;
    }

    // Clears Grassmann soul out of every denominator factor by multiplying
    // numerator and factor with the soul-conjugate; terminates because the
    // soul degree doubles each pass.
    SuperFraction rationalized() const {
        SuperFraction r = *this;
        DenFactors out;
        for (const auto& [f0, k] : r.den_) {
            SuperExpr f = f0;
            while (!f.grassmann_free()) {
                const SuperExpr b = f.body();
                const SuperExpr s = f.soul();
                if (b.is_zero()) throw division_error("denominator has zero body");
                const SuperExpr conj = b - s;
                for (int j = 0; j < k; ++j) r.num_ = r.num_ * conj;
                f = b * b - s * s;
            }
            out[f] += k;
        }
        r.den_ = std::move(out);
        r.normalize();
        return r;
    }

    // Cancels denominator factors that divide the numerator exactly.
    SuperFraction simplified() const {
        SuperFraction r = *this;
        if (r.num_.is_zero()) {
            r.den_.clear();
            return r;
        }
        for (auto it = r.den_.begin(); it != r.den_.end();) {
            bool progressed = true;
            while (it->second > 0 && progressed) {
                progressed = false;
                if (auto q = try_divide(r.num_, it->first)) {
                    r.num_ = std::move(*q);
                    --it->second;
                    progressed = true;
                }
            }
            it = it->second == 0 ? r.den_.erase(it) : std::next(it);
        }
        return r;
    }

private:
    // Product of common/den_ for scaling a numerator onto `common`.
    SuperExpr cofactor(const DenFactors& common) const {
        SuperExpr c = SuperExpr::one();
        for (const auto& [f, k] : common) {
            auto it = den_.find(f);
            const int have = it == den_.end() ? 0 : it->second;
            for (int j = 0; j < k - have; ++j) c = c * f;
        }
        return c;
    }

    void push_den(const SuperExpr& f, int power) {
        if (power == 0) return;
        if (f.is_zero() || f.body().is_zero())
            throw division_error("denominator must have nonzero body");
        if (f.parity() != Parity::Even)
            throw grading_error("denominator must be even");
        // A single exponential monomial (no variable powers) is invertible
        // outright; fold it into the numerator.
        if (f.size() == 1 && f.terms().begin()->first.odd.empty()) {
            const auto& [key, coeff] = *f.terms().begin();
            bool pure_phase = true;
            for (std::size_t k = 0; k < kNumVars; ++k)
                if (key.even.powers[k] != 0) pure_phase = false;
            if (pure_phase) {
                EvenMonomial inv_mono;
                for (std::size_t k = 0; k < kNumVars; ++k) inv_mono.phase[k] = -key.even.phase[k];
                GaussianRational inv_coeff(1);
                inv_coeff = inv_coeff / coeff;
                SuperExpr inv = SuperExpr::term(inv_coeff, inv_mono, {});
                for (int j = 0; j < power; ++j) num_ = num_ * inv;
                return;
            }
        }
        den_[f] += power;
    }

    void normalize() {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        for (auto it = den_.begin(); it != den_.end();)
            it = it->second == 0 ? den_.erase(it) : std::next(it);
    }

    SuperExpr num_;
    DenFactors den_;
};

inline SuperFraction frac_derive(const SuperFraction& a, Deriv d) { return a.derive(d); }

// Derivative of ln f of total order >= 1: the innermost derivation seeds
// (Df)/f and the remaining ones apply the quotient rule. Even derivations
// commute; the odd ones are applied innermost, D1 before D2.
inline SuperFraction log_derivative(const SuperExpr& f, const MultiIndex& idx) {
    if (idx.total_order() < 1)
        throw error("log_derivative: total order must be >= 1 (ln itself is not representable)");
    if (f.parity() != Parity::Even || f.body().is_zero())
        throw grading_error("log_derivative: argument must be even with nonzero body");
    SuperFraction r;
    bool seeded = false;
    const auto step = [&](Deriv d) {
        if (seeded) {
            r = r.derive(d);
        } else {
            r = SuperFraction(apply_deriv(f, d), f);
            seeded = true;
        }
    };
    for (int k = 0; k < idx.k1; ++k) step(Deriv::D1);
    for (int k = 0; k < idx.k2; ++k) step(Deriv::D2);
    for (int k = 0; k < idx.kt2; ++k) step(Deriv::Dt2);
    for (int k = 0; k < idx.kt; ++k) step(Deriv::Dt);
    for (int k = 0; k < idx.kx; ++k) step(Deriv::Dx);
    return r;
}

inline std::string to_string(const SuperFraction& a) {
    if (a.den_factors().empty()) return to_string(a.num());
    std::string s = "(" + to_string(a.num()) + ") / [";
    bool first = true;
    for (const auto& [f, k] : a.den_factors()) {
        if (!first) s += " * ";
        first = false;
        s += "(" + to_string(f) + ")";
        if (k != 1) s += "^" + std::to_string(k);
    }
    return s + "]";
}

} // namespace skdv
