#pragma once

// Scalar backends.
//
// Two coefficient fields are supported throughout the library:
//   - GaussRational: exact complex numbers a + b i with a, b rational (GMP).
//   - Complex: std::complex<double> with an explicit comparison tolerance.
//
// Everything that decides a dimension or an existence question is written
// against ScalarTraits<S> so it can run on the exact backend.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace brane_gauge {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Complex = std::complex<double>;

/// Default tolerance for floating comparisons and rank decisions.
inline constexpr double kDefaultFloatTolerance = 1e-10;

/// Singular-value gap ratio required to trust a floating rank decision.
inline constexpr double kRankGapRatio = 1e6;

class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
    GaussRational(int v) : re_(v), im_(0) {}   // NOLINT(google-explicit-constructor)
    GaussRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
    GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    [[nodiscard]] const Rational& re() const { return re_; }
    [[nodiscard]] const Rational& im() const { return im_; }

    [[nodiscard]] bool is_zero() const { return re_ == 0 && im_ == 0; }
    [[nodiscard]] GaussRational conj() const { return {re_, -im_}; }
    /// |z|^2, exact.
    [[nodiscard]] Rational norm2() const { return re_ * re_ + im_ * im_; }

    [[nodiscard]] Complex to_complex() const {
        return {re_.convert_to<double>(), im_.convert_to<double>()};
    }

    GaussRational& operator+=(const GaussRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o) {
        if (o.is_zero()) throw std::domain_error("GaussRational: division by zero");
        Rational d = o.norm2();
        Rational r = (re_ * o.re_ + im_ * o.im_) / d;
        Rational i = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const GaussRational& z) {
        os << z.re_;
        if (z.im_ != 0) os << (z.im_ > 0 ? "+" : "") << z.im_ << "i";
        return os;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

/// "a/b" or "a" (optionally signed) to Rational. Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto check_digits = [](const std::string& part) {
        std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (start >= part.size()) return false;
        for (std::size_t i = start; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!check_digits(num) || !check_digits(den))
        throw std::invalid_argument("malformed rational literal: " + s);
    Integer n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in " + s);
    return Rational(n, d);
}

/// Canonical "a/b" (or "a" when b = 1) text of a rational.
inline std::string format_rational(const Rational& q) {
    return q.str();
}

/// Exact rational value of a finite double (dyadic).
inline Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no rational form");
    int exp = 0;
    double mant = std::frexp(v, &exp);
    // 53 bits of mantissa fit in an int64 after scaling.
    auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    Rational q{Integer(scaled)};
    int shift = exp - 53;
    Integer pow2 = Integer(1) << std::abs(shift);
    if (shift >= 0) q *= Rational(pow2);
    else q /= Rational(pow2);
    return q;
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussRational> {
    static constexpr bool exact = true;
    static GaussRational zero() { return {}; }
    static GaussRational one() { return GaussRational(1); }
    static GaussRational from_int(long v) { return GaussRational(v); }
    static GaussRational from_complex(Complex z) {
        return {rational_from_double(z.real()), rational_from_double(z.imag())};
    }
    static bool is_zero(const GaussRational& x, double /*tol*/ = 0.0) { return x.is_zero(); }
    static GaussRational conj(const GaussRational& x) { return x.conj(); }
    static double abs(const GaussRational& x) { return std::sqrt(x.norm2().convert_to<double>()); }
    static Complex to_complex(const GaussRational& x) { return x.to_complex(); }
    static bool equal(const GaussRational& a, const GaussRational& b, double /*tol*/ = 0.0) {
        return a == b;
    }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static Complex from_complex(Complex z) { return z; }
    static bool is_zero(const Complex& x, double tol = kDefaultFloatTolerance) {
        return std::abs(x) <= tol;
    }
    static Complex conj(const Complex& x) { return std::conj(x); }
    static double abs(const Complex& x) { return std::abs(x); }
    static Complex to_complex(const Complex& x) { return x; }
    static bool equal(const Complex& a, const Complex& b, double tol = kDefaultFloatTolerance) {
        return std::abs(a - b) <= tol;
    }
};

template <class S>
concept ExactScalar = ScalarTraits<S>::exact;

}  // namespace brane_gauge
