#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "skdv/errors.hpp"

namespace skdv {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) { return r.str(); }

// Parses "n", "-n", "n/d" with arbitrary-precision parts.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational literal");
    try {
        Rational r(text);
        return r;
    } catch (const std::exception&) {
        throw parse_error("bad rational literal: '" + text + "'");
    }
}

// Exact square root of a nonnegative rational, if it is a perfect square.
inline std::optional<Rational> sqrt_exact(const Rational& r) {
    if (r < 0) return std::nullopt;
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    const Integer sn  = boost::multiprecision::sqrt(num);
    const Integer sd  = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rational(sn, sd);
}

// Complex number with exact rational real and imaginary parts. Closed under
// +, -, *, and / by nonzero elements; the zero test is exact.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(const Rational& re) : re_(re) {}           // NOLINT(google-explicit-constructor)
    GaussianRational(long long re) : re_(re) {}                 // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        const Rational re = re_ * o.re_ - im_ * o.im_;
        const Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = re;
        im_ = im;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw division_error("division by zero scalar");
        const Rational n = o.norm();
        const GaussianRational t = *this * o.conj();
        re_ = t.re_ / n;
        im_ = t.im_ / n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Total order for canonical forms only; not a magnitude comparison.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

inline int cmp(const GaussianRational& a, const GaussianRational& b) {
    if (a == b) return 0;
    return a < b ? -1 : 1;
}

// Exact complex square roots; empty when no Gaussian-rational root exists.
inline std::optional<std::pair<GaussianRational, GaussianRational>>
sqrt_exact(const GaussianRational& z) {
    if (z.is_zero()) return std::make_pair(GaussianRational(0), GaussianRational(0));
    if (z.im() == 0) {
        if (z.re() > 0) {
            auto s = sqrt_exact(z.re());
            if (!s) return std::nullopt;
            GaussianRational r(*s);
            return std::make_pair(r, -r);
        }
        auto s = sqrt_exact(-z.re());
        if (!s) return std::nullopt;
        GaussianRational r(Rational(0), *s);
        return std::make_pair(r, -r);
    }
    // (p+qi)^2 = a+bi  =>  p^2 = (a + |z|)/2, q = b/(2p)
    auto n = sqrt_exact(z.norm());
    if (!n) return std::nullopt;
    auto p2 = sqrt_exact((z.re() + *n) / 2);
    if (!p2) return std::nullopt;
    if (*p2 == 0) return std::nullopt;
    const Rational p = *p2;
    const Rational q = z.im() / (2 * p);
    GaussianRational r(p, q);
    if (!(r * r == z)) return std::nullopt;
    return std::make_pair(r, -r);
}

// ---------------------------------------------------------------------------
// Exact rational on int64, used where values only accumulate by addition of
// small inputs (exponential phase coefficients). Every operation is exact;
// anything that would leave the representable range throws instead of
// rounding. Comparisons cross-multiply in 128 bits and cannot overflow.

class Rat64 {
public:
    Rat64() = default;
    Rat64(long long n) : n_(n) {}  // NOLINT(google-explicit-constructor)

    static Rat64 make(__int128 n, __int128 d) {
        if (d == 0) throw division_error("Rat64: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
        constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
        if (n < lo || n > hi || d > hi) throw error("phase coefficient overflow");
        Rat64 r;
        r.n_ = static_cast<std::int64_t>(n);
        r.d_ = static_cast<std::int64_t>(d);
        return r;
    }

    static Rat64 from(const Rational& r) {
        const Integer num = boost::multiprecision::numerator(r);
        const Integer den = boost::multiprecision::denominator(r);
        constexpr long long hi = std::numeric_limits<std::int64_t>::max();
        if (num > hi || num < -hi || den > hi) throw error("phase coefficient overflow");
        Rat64 out;
        out.n_ = num.convert_to<std::int64_t>();
        out.d_ = den.convert_to<std::int64_t>();
        return out;
    }

    Rational to_rational() const { return Rational(n_, d_); }
    double to_double() const { return static_cast<double>(n_) / static_cast<double>(d_); }

    bool is_zero() const { return n_ == 0; }

    Rat64 operator-() const {
        Rat64 r = *this;
        r.n_ = -r.n_;
        return r;
    }
    friend Rat64 operator+(const Rat64& a, const Rat64& b) {
        return make(static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_,
                    static_cast<__int128>(a.d_) * b.d_);
    }
    friend Rat64 operator-(const Rat64& a, const Rat64& b) { return a + (-b); }
    friend Rat64 operator*(const Rat64& a, const Rat64& b) {
        return make(static_cast<__int128>(a.n_) * b.n_, static_cast<__int128>(a.d_) * b.d_);
    }
    friend bool operator==(const Rat64& a, const Rat64& b) {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }
    friend int cmp(const Rat64& a, const Rat64& b) {
        const __int128 lhs = static_cast<__int128>(a.n_) * b.d_;
        const __int128 rhs = static_cast<__int128>(b.n_) * a.d_;
        return lhs == rhs ? 0 : (lhs < rhs ? -1 : 1);
    }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
};

// Complex with Rat64 parts, for exponential phase coefficients.
struct Gaussian64 {
    Rat64 re;
    Rat64 im;

    Gaussian64() = default;
    Gaussian64(long long n) : re(n) {}  // NOLINT(google-explicit-constructor)
    Gaussian64(Rat64 r, Rat64 i) : re(r), im(i) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_one() const { return re == Rat64(1) && im.is_zero(); }

    Gaussian64 operator-() const { return {-re, -im}; }
    friend Gaussian64 operator+(const Gaussian64& a, const Gaussian64& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Gaussian64 operator-(const Gaussian64& a, const Gaussian64& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend bool operator==(const Gaussian64& a, const Gaussian64& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend int cmp(const Gaussian64& a, const Gaussian64& b) {
        if (int c = cmp(a.re, b.re); c != 0) return c;
        return cmp(a.im, b.im);
    }
};

inline Gaussian64 to_g64(const GaussianRational& c) {
    return {Rat64::from(c.re()), Rat64::from(c.im())};
}
inline GaussianRational to_gaussian(const Gaussian64& c) {
    return {c.re.to_rational(), c.im.to_rational()};
}

// Canonical rendering: "0", "1", "-3/2", "i", "-i", "2i", "(1+2i)", "(1/2-i)".
inline std::string to_string(const GaussianRational& c) {
    if (c.is_zero()) return "0";
    const auto imag_part = [](const Rational& im) -> std::string {
        if (im == 1) return "i";
        if (im == -1) return "-i";
        return to_string(im) + "i";
    };
    if (c.im() == 0) return to_string(c.re());
    if (c.re() == 0) return imag_part(c.im());
    std::string s = "(" + to_string(c.re());
    if (c.im() > 0) s += "+";
    s += imag_part(c.im()) + ")";
    return s;
}

// Accepts "3/4", "-2", "i", "-i", "2i", "3i/8", "1/2i", "(1+2i)", "1-3/4i".
inline GaussianRational parse_gaussian(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '(' && ch != ')') s += ch;
    if (s.empty()) throw parse_error("empty scalar literal");

    // Split "a+bi" / "a-bi" on the last top-level sign (not the leading one).
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '+' && s[k - 1] != '-') {
            split = k;
            break;
        }
    }
    const auto parse_atom = [](const std::string& atom) -> GaussianRational {
        if (atom.empty()) throw parse_error("empty scalar atom");
        const bool imag = atom.find('i') != std::string::npos;
        if (!imag) return GaussianRational(parse_rational(atom));
        std::string digits;
        for (char ch : atom)
            if (ch != 'i') digits += ch;
        if (digits.empty() || digits == "+") return GaussianRational::i();
        if (digits == "-") return -GaussianRational::i();
        if (digits.front() == '/') digits = "1" + digits;           // "i/8"
        if (digits.size() >= 2 && digits[0] == '-' && digits[1] == '/')
            digits = "-1" + digits.substr(1);
        return GaussianRational(Rational(0), parse_rational(digits));
    };
    if (split == std::string::npos) return parse_atom(s);
    GaussianRational lhs = parse_atom(s.substr(0, split));
    GaussianRational rhs = parse_atom(s.substr(split + 1));
    return s[split] == '+' ? lhs + rhs : lhs - rhs;
}

} // namespace skdv
