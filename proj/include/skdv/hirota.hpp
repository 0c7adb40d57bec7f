#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "skdv/calculus.hpp"
#include "skdv/multi_index.hpp"
#include "skdv/super_expr.hpp"

namespace skdv {

namespace detail {

// Bilinear combination sum_i F_i . G_i with scalar weights folded into F.
using PairList = std::vector<std::pair<SuperExpr, SuperExpr>>;

inline PairList hirota_even_step(const PairList& in, Var v) {
    PairList out;
    out.reserve(in.size() * 2);
    for (const auto& [f, g] : in) {
        out.emplace_back(d_base(f, v), g);
        out.emplace_back(f, -d_base(g, v));
    }
    return out;
}

// S_i(f.g) = (D_i f).g - (-1)^{|f|} f.(D_i g), applied to the homogeneous
// parts of f. The sign is the graded tensor rule for the primed operator
// passing the unprimed factor.
inline PairList hirota_odd_step(const PairList& in, int i) {
    PairList out;
    out.reserve(in.size() * 2);
    for (const auto& [f, g] : in) {
        const SuperExpr fe = f.even_part();
        const SuperExpr fo = f.odd_part();
        const SuperExpr dg = d_cov(g, i);
        if (!fe.is_zero()) {
            out.emplace_back(d_cov(fe, i), g);
            out.emplace_back(fe, -dg);
        }
        if (!fo.is_zero()) {
            out.emplace_back(d_cov(fo, i), g);
            out.emplace_back(fo, dg);
        }
    }
    return out;
}

} // namespace detail

// Super Hirota derivative S1^k1 S2^k2 Dx^kx Dt^kt Dt2^kt2 (f.g): the
// antisymmetrized derivatives on doubled coordinates, with primed and
// unprimed coordinates identified at the end. Computed by recursive
// single-step expansion on homogeneous parts. The even operators commute
// with everything; of the odd ones S1 is applied first, S2 outermost, so
// S2 S1 (f.f) matches the sign conventions used throughout.
inline SuperExpr hirota(const SuperExpr& f, const SuperExpr& g, const MultiIndex& idx) {
    detail::PairList pairs{{f, g}};
    for (int k = 0; k < idx.kt2; ++k) pairs = detail::hirota_even_step(pairs, Var::T2);
    for (int k = 0; k < idx.kt; ++k) pairs = detail::hirota_even_step(pairs, Var::T);
    for (int k = 0; k < idx.kx; ++k) pairs = detail::hirota_even_step(pairs, Var::X);
    for (int k = 0; k < idx.k1; ++k) pairs = detail::hirota_odd_step(pairs, 1);
    for (int k = 0; k < idx.k2; ++k) pairs = detail::hirota_odd_step(pairs, 2);
    SuperExpr r;
    for (const auto& [a, b] : pairs) r += a * b;
    return r;
}

// Linear combination of Hirota derivatives with scalar weights.
using OperatorCombo = std::vector<std::pair<GaussianRational, MultiIndex>>;

inline SuperExpr hirota_poly(const SuperExpr& f, const SuperExpr& g, const OperatorCombo& combo) {
    SuperExpr r;
    for (const auto& [c, idx] : combo) r += c * hirota(f, g, idx);
    return r;
}

// ---------------------------------------------------------------------------
// Textual operator syntax, e.g. "Dt+Dx^3", "S1(Dt+Dx^3)",
// "Dt + 1/4*Dx^3 + 3/4*Dx*Dt2", "2i*Dx". Grammar:
//   combo  := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := ('S1'|'S2') '(' combo ')'        -- distributes over the combo
//           | ('Dx'|'Dt'|'Dt2'|'S1'|'S2') ['^' int]
//           | scalar                            -- Gaussian rational literal
// Products of odd operators are canonicalized with S2 outermost.

namespace detail {

struct OperatorParser {
    std::string src;
    std::size_t pos = 0;

    explicit OperatorParser(std::string s) : src(std::move(s)) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos < src.size() && src[pos] == c;
    }
    bool consume(char c) {
        if (!peek_is(c)) return false;
        ++pos;
        return true;
    }
    bool consume_word(const char* w) {
        skip_ws();
        const std::size_t n = std::string(w).size();
        if (src.compare(pos, n, w) == 0) {
            pos += n;
            return true;
        }
        return false;
    }

    int parse_exponent() {
        if (!consume('^')) return 1;
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (start == pos) throw parse_error("operator syntax: exponent expected at '" +
                                            src.substr(start) + "'");
        return std::stoi(src.substr(start, pos - start));
    }

    OperatorCombo parse_combo() {
        OperatorCombo out;
        skip_ws();
        bool negate = consume('-');
        while (true) {
            OperatorCombo term = parse_term();
            for (auto& [c, idx] : term) out.emplace_back(negate ? -c : c, idx);
            skip_ws();
            if (consume('+')) {
                negate = false;
            } else if (consume('-')) {
                negate = true;
            } else {
                break;
            }
        }
        return out;
    }

    OperatorCombo parse_term() {
        OperatorCombo acc{{GaussianRational(1), MultiIndex{}}};
        bool first = true;
        while (true) {
            skip_ws();
            if (pos >= src.size()) break;
            if (!first && !consume('*')) break;
            OperatorCombo factor = parse_factor();
            OperatorCombo next;
            for (const auto& [ca, ia] : acc)
                for (const auto& [cb, ib] : factor) next.emplace_back(ca * cb, ia + ib);
            acc = std::move(next);
            first = false;
        }
        if (first) throw parse_error("operator syntax: empty term");
        return acc;
    }

    OperatorCombo parse_factor() {
        skip_ws();
        if (pos >= src.size()) throw parse_error("operator syntax: factor expected");
        // Operator names, longest first.
        const struct {
            const char* name;
            MultiIndex idx;
        } ops[] = {{"Dt2", MultiIndex::t2()},
                   {"Dt", MultiIndex::t()},
                   {"Dx", MultiIndex::x()},
                   {"S1", MultiIndex::d1()},
                   {"S2", MultiIndex::d2()}};
        for (const auto& op : ops) {
            const std::size_t save = pos;
            if (!consume_word(op.name)) continue;
            if ((op.idx.k1 || op.idx.k2) && peek_is('(')) {
                consume('(');
                OperatorCombo inner = parse_combo();
                if (!consume(')')) throw parse_error("operator syntax: missing ')'");
                for (auto& [c, idx] : inner) idx = idx + op.idx;
                return inner;
            }
            const int n = parse_exponent();
            MultiIndex idx;
            for (int k = 0; k < n; ++k) idx = idx + op.idx;
            (void)save;
            return {{GaussianRational(1), idx}};
        }
        // Scalar literal: digits, '/', 'i'.
        std::size_t start = pos;
        while (pos < src.size()) {
            const char c = src[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == 'i')
                ++pos;
            else
                break;
        }
        if (start == pos)
            throw parse_error("operator syntax: unrecognized token at '" + src.substr(pos) + "'");
        return {{parse_gaussian(src.substr(start, pos - start)), MultiIndex{}}};
    }
};

} // namespace detail

inline OperatorCombo parse_operator(const std::string& text) {
    detail::OperatorParser p(text);
    OperatorCombo combo = p.parse_combo();
    p.skip_ws();
    if (p.pos != p.src.size())
        throw parse_error("operator syntax: trailing input at '" + p.src.substr(p.pos) + "'");
    return combo;
}

} // namespace skdv
