#pragma once

// Sparse multivariate polynomials keyed by exponent vector.
//
// The same template serves three roles:
//   Polynomial<GaussRational>  homogeneous forms in x_0..x_n (projective model)
//   Polynomial<Complex>        curvature entries in the real gauge variables
//   Polynomial<double>         RealPoly, the Yang-Mills functional P(lambda)

#include "brane_gauge/algebra/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace brane_gauge {

using Exponent = std::vector<int>;

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<double> {
    static double zero() { return 0.0; }
    static double from_int(long v) { return static_cast<double>(v); }
    static bool is_zero(double c) { return c == 0.0; }
    static double conj(double c) { return c; }
    static double magnitude(double c) { return std::abs(c); }
};

template <>
struct CoeffTraits<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational from_int(long v) { return Rational(v); }
    static bool is_zero(const Rational& c) { return c == 0; }
    static Rational conj(const Rational& c) { return c; }
    static double magnitude(const Rational& c) { return std::abs(c.convert_to<double>()); }
};

template <>
struct CoeffTraits<Complex> {
    static Complex zero() { return {}; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static bool is_zero(const Complex& c) { return c == Complex{}; }
    static Complex conj(const Complex& c) { return std::conj(c); }
    static double magnitude(const Complex& c) { return std::abs(c); }
};

template <>
struct CoeffTraits<GaussRational> {
    static GaussRational zero() { return {}; }
    static GaussRational from_int(long v) { return GaussRational(v); }
    static bool is_zero(const GaussRational& c) { return c.is_zero(); }
    static GaussRational conj(const GaussRational& c) { return c.conj(); }
    static double magnitude(const GaussRational& c) { return std::abs(c.to_complex()); }
};

template <class C>
class Polynomial {
public:
    using Coeff = C;
    using Traits = CoeffTraits<C>;
    using TermMap = std::map<Exponent, C>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const C& c) {
        Polynomial p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }
    static Polynomial variable(std::size_t nvars, std::size_t index, const C& c = CoeffTraits<C>::from_int(1)) {
        if (index >= nvars) throw std::out_of_range("Polynomial::variable: index out of range");
        Exponent e(nvars, 0);
        e[index] = 1;
        Polynomial p(nvars);
        p.add_term(e, c);
        return p;
    }
    static Polynomial monomial(const Exponent& e, const C& c) {
        Polynomial p(e.size());
        p.add_term(e, c);
        return p;
    }

    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    /// Adds c * x^e, dropping the term if it cancels.
    void add_term(const Exponent& e, const C& c) {
        if (e.size() != nvars_) throw std::invalid_argument("Polynomial: exponent length mismatch");
        for (int x : e)
            if (x < 0) throw std::invalid_argument("Polynomial: negative exponent");
        if (Traits::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (Traits::is_zero(it->second)) terms_.erase(it);
    }

    [[nodiscard]] C coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Traits::zero() : it->second;
    }

    /// Max total degree over stored terms; -1 for the zero polynomial.
    [[nodiscard]] int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    /// True when every term has total degree d (vacuously true for zero).
    [[nodiscard]] bool is_homogeneous(int d) const {
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            if (s != d) return false;
        }
        return true;
    }

    [[nodiscard]] bool is_constant() const { return total_degree() <= 0; }

    [[nodiscard]] Polynomial derivative(std::size_t var) const {
        if (var >= nvars_) throw std::out_of_range("Polynomial::derivative: variable out of range");
        Polynomial d(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponent f = e;
            C k = c;
            k *= Traits::from_int(f[var]);
            f[var] -= 1;
            d.add_term(f, k);
        }
        return d;
    }

    [[nodiscard]] Polynomial conj() const {
        Polynomial p(nvars_);
        for (const auto& [e, c] : terms_) p.terms_.emplace(e, Traits::conj(c));
        return p;
    }

    /// Drops terms with |c| <= tol.
    [[nodiscard]] Polynomial pruned(double tol) const {
        Polynomial p(nvars_);
        for (const auto& [e, c] : terms_)
            if (Traits::magnitude(c) > tol) p.terms_.emplace(e, c);
        return p;
    }

    [[nodiscard]] double max_abs_coefficient() const {
        double m = 0.0;
        for (const auto& [e, c] : terms_) m = std::max(m, Traits::magnitude(c));
        return m;
    }

    template <class T>
    [[nodiscard]] T evaluate(const std::vector<T>& x) const {
        if (x.size() != nvars_) throw std::invalid_argument("Polynomial::evaluate: point dimension mismatch");
        T sum{};
        for (const auto& [e, c] : terms_) {
            T term = static_cast<T>(c);
            for (std::size_t i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) term *= x[i];
            sum += term;
        }
        return sum;
    }

    Polynomial& operator+=(const Polynomial& o) {
        require_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        require_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const C& s) {
        if (Traits::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second *= s;
            if (Traits::is_zero(it->second)) it = terms_.erase(it);
            else ++it;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial p(a.nvars_);
        for (const auto& [e, c] : a.terms_) p.terms_.emplace(e, -c);
        return p;
    }
    friend Polynomial operator*(Polynomial a, const C& s) { return a *= s; }
    friend Polynomial operator*(const C& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_compatible(b);
        Polynomial p(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                p.add_term(e, ca * cb);
            }
        return p;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    void require_compatible(const Polynomial& o) const {
        if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    }

    std::size_t nvars_ = 0;
    TermMap terms_;
};

/// Real-coefficient polynomial in the real gauge variables.
using RealPoly = Polynomial<double>;
using ExactRealPoly = Polynomial<Rational>;

/// Real part of each coefficient.
inline RealPoly real_part(const Polynomial<Complex>& p) {
    RealPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c.real());
    return r;
}

inline ExactRealPoly real_part(const Polynomial<GaussRational>& p) {
    ExactRealPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c.re());
    return r;
}

inline RealPoly imag_part(const Polynomial<Complex>& p) {
    RealPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c.imag());
    return r;
}

inline ExactRealPoly imag_part(const Polynomial<GaussRational>& p) {
    ExactRealPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c.im());
    return r;
}

inline RealPoly to_float(const ExactRealPoly& p) {
    RealPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c.convert_to<double>());
    return r;
}

/// Partial derivatives with respect to every real variable (Re lambda_a, Im lambda_a).
///
/// For a real P, the complex Wirtinger derivative dP/d(lambda_a) equals
/// (dP/dRe - i dP/dIm) / 2, so the real gradient vanishes exactly where the
/// Wirtinger derivatives do.
template <class C>
std::vector<Polynomial<C>> poly_wirtinger_gradient(const Polynomial<C>& p) {
    std::vector<Polynomial<C>> g;
    g.reserve(p.nvars());
    for (std::size_t v = 0; v < p.nvars(); ++v) g.push_back(p.derivative(v));
    return g;
}

/// Compiled form of a polynomial for repeated floating evaluation.
class CompiledPoly {
public:
    CompiledPoly() = default;
    explicit CompiledPoly(const RealPoly& p) : nvars_(p.nvars()) {
        for (const auto& [e, c] : p.terms()) {
            Term t;
            t.coeff = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) t.factors.emplace_back(static_cast<int>(i), e[i]);
            max_power_ = std::max(max_power_, e.empty() ? 0 : *std::max_element(e.begin(), e.end()));
            terms_.push_back(std::move(t));
        }
    }

    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    [[nodiscard]] int max_power() const { return max_power_; }

    /// powers[i * (max_power + 1) + k] = x_i^k
    [[nodiscard]] double evaluate_with_powers(const std::vector<double>& powers, int stride) const {
        double s = 0.0;
        for (const auto& t : terms_) {
            double v = t.coeff;
            for (const auto& [var, pw] : t.factors) v *= powers[static_cast<std::size_t>(var * stride + pw)];
            s += v;
        }
        return s;
    }

    [[nodiscard]] double evaluate(const std::vector<double>& x) const {
        int stride = max_power_ + 1;
        auto powers = power_table(x, max_power_);
        return evaluate_with_powers(powers, stride);
    }

    static std::vector<double> power_table(const std::vector<double>& x, int max_power) {
        int stride = max_power + 1;
        std::vector<double> powers(x.size() * static_cast<std::size_t>(stride));
        for (std::size_t i = 0; i < x.size(); ++i) {
            double v = 1.0;
            for (int k = 0; k <= max_power; ++k) {
                powers[i * static_cast<std::size_t>(stride) + static_cast<std::size_t>(k)] = v;
                v *= x[i];
            }
        }
        return powers;
    }

private:
    struct Term {
        double coeff = 0.0;
        std::vector<std::pair<int, int>> factors;
    };
    std::size_t nvars_ = 0;
    int max_power_ = 0;
    std::vector<Term> terms_;
};

}  // namespace brane_gauge
