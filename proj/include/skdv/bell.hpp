#pragma once

#include <map>
#include <string>
#include <utility>

#include "skdv/fraction.hpp"
#include "skdv/hirota.hpp"
#include "skdv/jet.hpp"
#include "skdv/multi_index.hpp"

namespace skdv {

// One recursion step of e^{-f} (derivatives) e^{f}. For an even derivation:
// P -> dP + P f_d. For D1, applied termwise to homogeneous tau:
// tau -> D1 tau + (-1)^{|tau|} tau (D1 f).
inline JetExpr bell_step(const JetExpr& p, FieldId f, Deriv d) {
    if (d == Deriv::D2) throw error("bell_step: D2 not supported in Bell polynomials");
    if (d == Deriv::D1) {
        return jet_derive(p, Deriv::D1) +
               (p.even_part() - p.odd_part()) * jet(f, 0, 0, 0, 1);
    }
    const MultiIndex one = d == Deriv::Dx ? MultiIndex::x()
                         : d == Deriv::Dt ? MultiIndex::t()
                                          : MultiIndex::t2();
    return jet_derive(p, d) + p * jet(f, one.kx, one.kt, one.kt2, 0);
}

// One-variable Bell polynomial Y_idx(f) = e^{-f} dx^kx dt^kt dt2^kt2 D1^k1 e^f
// as a polynomial in the jets of the even field f. D1 is innermost; the even
// steps commute, so their order does not matter.
inline JetExpr bell_Y(FieldId f, const MultiIndex& idx) {
    if (idx.k2 != 0) throw error("bell_Y: k2 must be zero");
    if (FieldRegistry::instance().is_odd(f)) throw grading_error("bell_Y: field must be even");
    JetExpr p = JetExpr::one();
    for (int k = 0; k < idx.k1; ++k) p = bell_step(p, f, Deriv::D1);
    for (int k = 0; k < idx.kt2; ++k) p = bell_step(p, f, Deriv::Dt2);
    for (int k = 0; k < idx.kt; ++k) p = bell_step(p, f, Deriv::Dt);
    for (int k = 0; k < idx.kx; ++k) p = bell_step(p, f, Deriv::Dx);
    return p;
}

// Substitution slot of the binary Bell polynomial: target field plus a
// constant even multiplier (a plain scalar in the usual case, or an
// expression in constant fields such as a formal parameter).
struct BellSlot {
    JetExpr multiplier;
    FieldId field;

    BellSlot(const GaussianRational& c, FieldId f) : multiplier(JetExpr(c)), field(f) {}
    BellSlot(JetExpr mult, FieldId f) : multiplier(std::move(mult)), field(f) {}
};

// Binary Bell polynomial: expands Y_idx and routes each jet f_k to the first
// slot when the index sum kx+kt+kt2+k1 is odd and to the second slot when it
// is even, scaling by the slot multiplier. t and t2 each count one toward
// the parity, like x.
inline JetExpr binary_bell(const MultiIndex& idx, const BellSlot& slot1, const BellSlot& slot2) {
    const auto& reg = FieldRegistry::instance();
    if (reg.is_odd(slot1.field) || reg.is_odd(slot2.field))
        throw grading_error("binary_bell: slot fields must be even");
    for (const auto* s : {&slot1, &slot2}) {
        if (!s->multiplier.is_even())
            throw grading_error("binary_bell: multipliers must be even");
        for (const auto& [m, c] : s->multiplier.terms()) {
            (void)c;
            for (const auto& v : m.vars)
                if (!reg.is_constant(v.field))
                    throw error("binary_bell: multipliers must be constant expressions");
        }
    }
    const JetExpr y = bell_Y(FieldRegistry::kF, idx);
    JetExpr out;
    for (const auto& [m, c] : y.terms()) {
        JetExpr acc(c);
        for (const auto& v : m.vars) {
            const bool odd_sum = v.index_sum() % 2 != 0;
            const BellSlot& slot = odd_sum ? slot1 : slot2;
            JetVariable mapped = v;
            mapped.field = slot.field;
            acc = acc * slot.multiplier * JetExpr::var(mapped);
        }
        out += acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// The Bell <-> Hirota bridge. Jets of w1 = ln(f/g) and w2 = ln(fg) are
// realized as log-derivative fractions of concrete tau functions, and the
// binary Bell polynomial is compared with (fg)^{-1} S1^k1 Dx^kx Dt^kt Dt2^kt2
// (f.g) as an exact fraction identity.

struct LinkResult {
    bool equal = false;
    SuperFraction residual;
    SuperFraction lhs;
    SuperFraction rhs;
};

// Evaluates a jet polynomial in the fields w1, w2 by mapping each jet to the
// corresponding derivative of ln(f/g) resp. ln(fg).
inline SuperFraction eval_bell_jets(const JetExpr& e, const SuperExpr& f, const SuperExpr& g) {
    std::map<JetVariable, SuperFraction> cache;
    const auto realize = [&](const JetVariable& v) -> const SuperFraction& {
        auto it = cache.find(v);
        if (it != cache.end()) return it->second;
        const MultiIndex idx{v.kx, v.kt, v.kt2, v.k1, 0};
        SuperFraction value;
        if (v.field == FieldRegistry::kW1)
            value = log_derivative(f, idx) - log_derivative(g, idx);
        else if (v.field == FieldRegistry::kW2)
            value = log_derivative(f, idx) + log_derivative(g, idx);
        else
            throw error("eval_bell_jets: expression must use fields w1/w2 only");
        return cache.emplace(v, std::move(value)).first->second;
    };
    SuperFraction out;
    for (const auto& [m, c] : e.terms()) {
        SuperFraction acc{SuperExpr(c)};
        for (const auto& v : m.vars) acc = acc * realize(v);
        out = out + acc;
    }
    return out;
}

// Verifies Y_idx(w1 = ln(f/g), w2 = ln(fg)) = (fg)^{-1} S1^k1 D^... (f.g)
// exactly, returning the verdict together with the residual fraction.
inline LinkResult link_check(const SuperExpr& f, const SuperExpr& g, const MultiIndex& idx) {
    if (idx.k2 != 0) throw error("link_check: k2 must be zero");
    if (idx.total_order() < 1) throw error("link_check: total order must be >= 1");
    const JetExpr y = binary_bell(idx, BellSlot(GaussianRational(1), FieldRegistry::kW1),
                                  BellSlot(GaussianRational(1), FieldRegistry::kW2));
    LinkResult r;
    r.lhs = eval_bell_jets(y, f, g);
    r.rhs = SuperFraction(hirota(f, g, idx)) / SuperFraction(f) / SuperFraction(g);
    r.residual = r.lhs - r.rhs;
    r.equal = r.residual.is_zero();
    return r;
}

// ---------------------------------------------------------------------------
// Index strings for the CLI: comma-separated atoms "3x", "t", "xxx", "t2",
// "theta1" (e.g. "xxx,theta1" or "x,t2").
inline MultiIndex parse_index(const std::string& text) {
    MultiIndex idx;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        std::string atom = text.substr(pos, end - pos);
        pos = end + 1;
        // strip blanks
        std::string a;
        for (char c : atom)
            if (c != ' ') a += c;
        if (a.empty()) continue;
        int count = 1;
        std::size_t k = 0;
        if (std::isdigit(static_cast<unsigned char>(a[0]))) {
            std::size_t digits = 0;
            while (digits < a.size() && std::isdigit(static_cast<unsigned char>(a[digits])))
                ++digits;
            count = std::stoi(a.substr(0, digits));
            k = digits;
        }
        const std::string unit = a.substr(k);
        if (unit == "t2") {
            idx.kt2 += count;
        } else if (unit == "t") {
            idx.kt += count;
        } else if (unit == "theta1") {
            idx.k1 += count;
        } else if (!unit.empty() && unit.find_first_not_of('x') == std::string::npos) {
            idx.kx += count * static_cast<int>(unit.size());
        } else if (!unit.empty() && unit.find_first_not_of('t') == std::string::npos) {
            idx.kt += count * static_cast<int>(unit.size());
        } else {
            throw parse_error("bad index atom: '" + atom + "'");
        }
    }
    return idx;
}

} // namespace skdv
