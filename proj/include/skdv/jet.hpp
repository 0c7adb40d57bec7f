#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skdv/errors.hpp"
#include "skdv/multi_index.hpp"
#include "skdv/rational.hpp"

namespace skdv {

using FieldId = unsigned;

// Registry of abstract superfields for the jet (free differential) algebra.
// Constant fields have all derivatives equal to zero; they act as formal
// scalar parameters carried in coefficients.
class FieldRegistry {
public:
    static constexpr FieldId kB    = 0;
    static constexpr FieldId kP    = 1;
    static constexpr FieldId kC    = 2;
    static constexpr FieldId kQ    = 3;
    static constexpr FieldId kW    = 4;
    static constexpr FieldId kRho  = 5;   // odd
    static constexpr FieldId kN    = 6;
    static constexpr FieldId kM    = 7;
    static constexpr FieldId kQ0   = 8;
    static constexpr FieldId kQ12  = 9;
    static constexpr FieldId kP12  = 10;
    static constexpr FieldId kQ0t  = 11;  // auxiliary second slot
    static constexpr FieldId kP12t = 12;  // auxiliary second slot
    static constexpr FieldId kBigM = 13;
    static constexpr FieldId kLam  = 14;  // constant parameter
    static constexpr FieldId kF    = 15;  // generic field
    static constexpr FieldId kW1   = 16;
    static constexpr FieldId kW2   = 17;

    static FieldRegistry& instance() {
        static FieldRegistry reg;
        return reg;
    }

    FieldId declare(const std::string& name, bool odd = false, bool constant = false) {
        for (FieldId k = 0; k < fields_.size(); ++k)
            if (fields_[k].name == name) return k;
        fields_.push_back({name, odd, constant});
        return static_cast<FieldId>(fields_.size() - 1);
    }

    const std::string& name(FieldId f) const { return fields_.at(f).name; }
    bool is_odd(FieldId f) const { return fields_.at(f).odd; }
    bool is_constant(FieldId f) const { return fields_.at(f).constant; }

private:
    struct Field {
        std::string name;
        bool odd;
        bool constant;
    };

    FieldRegistry() {
        fields_ = {{"B", false, false},    {"p", false, false},   {"C", false, false},
                   {"q", false, false},    {"w", false, false},   {"rho", true, false},
                   {"n", false, false},    {"m", false, false},   {"q0", false, false},
                   {"q12", false, false},  {"p12", false, false}, {"q0t", false, false},
                   {"p12t", false, false}, {"M", false, false},   {"lam", false, true},
                   {"f", false, false},    {"w1", false, false},  {"w2", false, false}};
    }

    std::vector<Field> fields_;
};

// Abstract derivative symbol dx^kx dt^kt dt2^kt2 D1^k1 applied to a field.
// D1 on a jet with k1=1 folds into kx+1, k1=0, so k1 stays in {0,1} and
// index sums are always read off this normalized form, which is the
// notation the Bell substitution parity rule is written in.
struct JetVariable {
    FieldId field = 0;
    std::uint16_t kx = 0;
    std::uint16_t kt = 0;
    std::uint16_t kt2 = 0;
    std::uint8_t k1 = 0;

    bool is_odd() const {
        return FieldRegistry::instance().is_odd(field) != (k1 == 1);
    }
    int index_sum() const { return kx + kt + kt2 + k1; }
    bool has_time() const { return kt > 0 || kt2 > 0; }

    friend bool operator==(const JetVariable&, const JetVariable&) = default;
    friend auto operator<=>(const JetVariable& a, const JetVariable& b) {
        if (auto c = a.field <=> b.field; c != 0) return c;
        if (auto c = a.kx <=> b.kx; c != 0) return c;
        if (auto c = a.kt <=> b.kt; c != 0) return c;
        if (auto c = a.kt2 <=> b.kt2; c != 0) return c;
        return a.k1 <=> b.k1;
    }
};

// Graded-commutative monomial: canonically sorted jet variables; even jets
// may repeat, odd jets square to zero.
struct JetMonomial {
    std::vector<JetVariable> vars;

    bool odd_parity() const {
        int odd = 0;
        for (const auto& v : vars) odd += v.is_odd() ? 1 : 0;
        return odd % 2 != 0;
    }

    friend bool operator==(const JetMonomial&, const JetMonomial&) = default;
    friend bool operator<(const JetMonomial& a, const JetMonomial& b) {
        return std::lexicographical_compare(a.vars.begin(), a.vars.end(), b.vars.begin(),
                                            b.vars.end());
    }
};

// Merges two sorted monomials; the sign counts transpositions of odd
// factors. Returns 0 on a repeated odd factor.
inline int jet_monomial_mul(const JetMonomial& a, const JetMonomial& b, JetMonomial& out) {
    out.vars.clear();
    out.vars.reserve(a.vars.size() + b.vars.size());
    int sign = 1;
    std::size_t i = 0, j = 0;
    // odd_suffix[i] = number of odd variables in a.vars[i..].
    std::vector<int> odd_suffix(a.vars.size() + 1, 0);
    for (std::size_t k = a.vars.size(); k-- > 0;)
        odd_suffix[k] = odd_suffix[k + 1] + (a.vars[k].is_odd() ? 1 : 0);
    while (i < a.vars.size() && j < b.vars.size()) {
        if (a.vars[i] == b.vars[j] && a.vars[i].is_odd()) return 0;
        if (a.vars[i] <= b.vars[j]) {
            out.vars.push_back(a.vars[i++]);
        } else {
            if (b.vars[j].is_odd() && odd_suffix[i] % 2 != 0) sign = -sign;
            out.vars.push_back(b.vars[j++]);
        }
    }
    while (i < a.vars.size()) out.vars.push_back(a.vars[i++]);
    while (j < b.vars.size()) out.vars.push_back(b.vars[j++]);
    return sign;
}

// Canonical graded-commutative polynomial in jet variables.
class JetExpr {
public:
    using TermMap = std::map<JetMonomial, GaussianRational>;

    JetExpr() = default;
    JetExpr(const GaussianRational& c) {   // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_[JetMonomial{}] = c;
    }
    JetExpr(long long n) : JetExpr(GaussianRational(n)) {}  // NOLINT

    static JetExpr zero() { return {}; }
    static JetExpr one() { return JetExpr(1); }
    static JetExpr var(const JetVariable& v) {
        JetExpr e;
        e.terms_[JetMonomial{{v}}] = GaussianRational(1);
        return e;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_even() const {
        for (const auto& [m, c] : terms_)
            if (m.odd_parity()) return false;
        return true;
    }
    bool is_odd() const {
        for (const auto& [m, c] : terms_)
            if (!m.odd_parity()) return false;
        return !terms_.empty();
    }

    JetExpr even_part() const { return filter(false); }
    JetExpr odd_part() const { return filter(true); }

    JetExpr operator-() const {
        JetExpr r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    JetExpr& operator+=(const JetExpr& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    JetExpr& operator-=(const JetExpr& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend JetExpr operator+(JetExpr a, const JetExpr& b) { return a += b; }
    friend JetExpr operator-(JetExpr a, const JetExpr& b) { return a -= b; }

    friend JetExpr operator*(const JetExpr& a, const JetExpr& b) {
        JetExpr r;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                JetMonomial m;
                const int sign = jet_monomial_mul(ma, mb, m);
                if (sign == 0) continue;
                GaussianRational c = ca * cb;
                if (sign < 0) c = -c;
                r.add_term(m, c);
            }
        }
        return r;
    }
    friend JetExpr operator*(const GaussianRational& s, const JetExpr& e) {
        JetExpr r;
        if (s.is_zero()) return r;
        for (const auto& [m, c] : e.terms_) r.terms_.emplace(m, s * c);
        return r;
    }
    friend JetExpr operator*(const JetExpr& e, const GaussianRational& s) { return s * e; }

    friend bool operator==(const JetExpr& a, const JetExpr& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const JetExpr& a, const JetExpr& b) { return !(a == b); }

    void add_term(const JetMonomial& m, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

private:
    JetExpr filter(bool odd) const {
        JetExpr r;
        for (const auto& [m, c] : terms_)
            if (m.odd_parity() == odd) r.terms_.emplace(m, c);
        return r;
    }

    TermMap terms_;
};

inline JetExpr jet(FieldId f, int kx = 0, int kt = 0, int kt2 = 0, int k1 = 0) {
    return JetExpr::var(JetVariable{f, static_cast<std::uint16_t>(kx),
                                    static_cast<std::uint16_t>(kt),
                                    static_cast<std::uint16_t>(kt2),
                                    static_cast<std::uint8_t>(k1)});
}

// Derivative of a single jet variable; D1 on k1=1 becomes kx+1, k1=0.
// Constant fields have derivative zero (empty expression).
inline JetExpr jet_var_derive(const JetVariable& v, Deriv d) {
    if (FieldRegistry::instance().is_constant(v.field)) return JetExpr::zero();
    JetVariable r = v;
    switch (d) {
        case Deriv::Dx: ++r.kx; break;
        case Deriv::Dt: ++r.kt; break;
        case Deriv::Dt2: ++r.kt2; break;
        case Deriv::D1:
            if (r.k1 == 0) {
                r.k1 = 1;
            } else {
                r.k1 = 0;
                ++r.kx;
            }
            break;
        case Deriv::D2: throw error("jets carry D1 only");
    }
    return JetExpr::var(r);
}

// Graded Leibniz derivation on the jet algebra: for an odd derivation the
// factor being differentiated contributes the parity sign of everything to
// its left.
inline JetExpr jet_derive(const JetExpr& e, Deriv d) {
    const bool odd_d = deriv_is_odd(d);
    JetExpr r;
    for (const auto& [m, c] : e.terms()) {
        int sign = 1;
        for (std::size_t k = 0; k < m.vars.size(); ++k) {
            JetExpr dv = jet_var_derive(m.vars[k], d);
            if (!dv.is_zero()) {
                JetExpr prefix;
                prefix.add_term(JetMonomial{{m.vars.begin(), m.vars.begin() + k}},
                                sign < 0 ? -c : c);
                JetExpr suffix;
                suffix.add_term(JetMonomial{{m.vars.begin() + k + 1, m.vars.end()}},
                                GaussianRational(1));
                r += prefix * dv * suffix;
            }
            if (odd_d && m.vars[k].is_odd()) sign = -sign;
        }
    }
    return r;
}

inline JetExpr jet_derive_multi(const JetExpr& e, const MultiIndex& idx) {
    if (idx.k2 != 0) throw error("jets carry D1 only");
    JetExpr r = e;
    for (int k = 0; k < idx.k1; ++k) r = jet_derive(r, Deriv::D1);
    for (int k = 0; k < idx.kt2; ++k) r = jet_derive(r, Deriv::Dt2);
    for (int k = 0; k < idx.kt; ++k) r = jet_derive(r, Deriv::Dt);
    for (int k = 0; k < idx.kx; ++k) r = jet_derive(r, Deriv::Dx);
    return r;
}

// Replaces every jet of the mapped fields by the corresponding derivative of
// the image expression. Images must match the parity of the field they
// replace, otherwise the monomial reordering signs lose meaning.
inline JetExpr subst_fields(const JetExpr& e, const std::map<FieldId, JetExpr>& images) {
    for (const auto& [f, img] : images) {
        const bool odd = FieldRegistry::instance().is_odd(f);
        if ((odd && !img.is_odd()) || (!odd && !img.is_even()))
            throw grading_error("subst_fields: image parity mismatch for field " +
                                FieldRegistry::instance().name(f));
    }
    JetExpr r;
    for (const auto& [m, c] : e.terms()) {
        JetExpr acc(c);
        for (const auto& v : m.vars) {
            auto it = images.find(v.field);
            if (it == images.end()) {
                acc = acc * JetExpr::var(v);
                continue;
            }
            acc = acc * jet_derive_multi(it->second, MultiIndex{v.kx, v.kt, v.kt2, v.k1, 0});
        }
        r += acc;
    }
    return r;
}

// Replaces a constant field by a scalar value.
inline JetExpr subst_constant(const JetExpr& e, FieldId f, const GaussianRational& value) {
    if (!FieldRegistry::instance().is_constant(f))
        throw error("subst_constant: field is not constant");
    JetExpr r;
    for (const auto& [m, c] : e.terms()) {
        GaussianRational coeff = c;
        JetMonomial rest;
        for (const auto& v : m.vars) {
            if (v.field == f)
                coeff *= value;
            else
                rest.vars.push_back(v);
        }
        r.add_term(rest, coeff);
    }
    return r;
}

// On-shell substitution rule: a pure time-derivative jet (kx = 0, at least
// one time index, k1 <= 1) rewritten as an expression in space-only jets.
struct FlowRule {
    JetVariable lhs;
    JetExpr rhs;

    FlowRule(const JetVariable& l, JetExpr r) : lhs(l), rhs(std::move(r)) {
        if (lhs.kx != 0 || (lhs.kt == 0 && lhs.kt2 == 0) || lhs.k1 > 1)
            throw error("FlowRule: lhs must be a pure time-derivative jet");
        for (const auto& [m, c] : rhs.terms()) {
            (void)c;
            for (const auto& v : m.vars)
                if (v.has_time()) throw error("FlowRule: rhs must be free of time jets");
        }
        const bool lodd = lhs.is_odd();
        if ((lodd && !rhs.is_odd() && !rhs.is_zero()) || (!lodd && !rhs.is_even()))
            throw grading_error("FlowRule: rhs parity mismatch");
    }

    // A jet is governed when it is a pure D1/x derivative of the lhs.
    bool governs(const JetVariable& v) const {
        if (v.field != lhs.field || v.kt != lhs.kt || v.kt2 != lhs.kt2) return false;
        return 2 * v.kx + v.k1 >= 2 * lhs.kx + lhs.k1;
    }

    // Derived rule for a governed jet, obtained by differentiating this rule.
    JetExpr image(const JetVariable& v) const {
        const int steps = (2 * v.kx + v.k1) - (2 * lhs.kx + lhs.k1);
        JetExpr r = rhs;
        for (int k = 0; k < steps; ++k) r = jet_derive(r, Deriv::D1);
        return r;
    }
};

// Eliminates every time-derivative jet governed by some rule, extending the
// rules by x/D1 derivatives as needed. Terminates because each replacement
// strictly lowers the number of governed occurrences (rule right-hand sides
// are time-free). Ungoverned time jets are left alone and listed in
// `leftover` when requested.
inline JetExpr reduce_on_shell(const JetExpr& e, const std::vector<FlowRule>& rules,
                               std::vector<JetVariable>* leftover = nullptr) {
    JetExpr cur = e;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [m, c] : cur.terms()) {
            const FlowRule* rule = nullptr;
            std::size_t pos = 0;
            for (std::size_t k = 0; k < m.vars.size() && !rule; ++k)
                for (const auto& r : rules)
                    if (r.governs(m.vars[k])) {
                        rule = &r;
                        pos = k;
                        break;
                    }
            if (!rule) continue;
            JetExpr prefix;
            prefix.add_term(JetMonomial{{m.vars.begin(), m.vars.begin() + pos}}, c);
            JetExpr suffix;
            suffix.add_term(JetMonomial{{m.vars.begin() + pos + 1, m.vars.end()}},
                            GaussianRational(1));
            JetExpr replaced = prefix * rule->image(m.vars[pos]) * suffix;
            cur.add_term(m, -c);
            cur += replaced;
            changed = true;
            break;  // the term map was modified; restart the scan
        }
    }
    if (leftover) {
        leftover->clear();
        for (const auto& [m, c] : cur.terms()) {
            (void)c;
            for (const auto& v : m.vars)
                if (v.has_time()) leftover->push_back(v);
        }
        std::sort(leftover->begin(), leftover->end());
        leftover->erase(std::unique(leftover->begin(), leftover->end()), leftover->end());
    }
    return cur;
}

inline std::string to_string(const JetVariable& v) {
    std::string s;
    if (v.k1) s += "D1";
    s += FieldRegistry::instance().name(v.field);
    if (v.kx + v.kt + v.kt2 > 0) {
        s += "_";
        for (int k = 0; k < v.kx; ++k) s += "x";
        for (int k = 0; k < v.kt; ++k) s += "t";
        for (int k = 0; k < v.kt2; ++k) s += "t2";
    }
    return s;
}

inline std::string to_string(const JetMonomial& m) {
    std::string s;
    for (std::size_t k = 0; k < m.vars.size();) {
        std::size_t run = k + 1;
        while (run < m.vars.size() && m.vars[run] == m.vars[k]) ++run;
        if (!s.empty()) s += "*";
        const std::string name = to_string(m.vars[k]);
        s += m.vars[k].k1 ? "(" + name + ")" : name;
        if (run - k > 1) s += "^" + std::to_string(run - k);
        k = run;
    }
    return s;
}

inline std::string to_string(const JetExpr& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : e.terms()) {
        const std::string mono = to_string(m);
        std::string term;
        if (mono.empty())
            term = to_string(c);
        else if (c.is_one())
            term = mono;
        else if (c == GaussianRational(-1))
            term = "-" + mono;
        else
            term = to_string(c) + "*" + mono;
        if (out.empty())
            out = term;
        else if (term.front() == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

} // namespace skdv
