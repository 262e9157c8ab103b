#pragma once

// Line bundles O(k) on P^1 in the two-chart Cech picture: U_0 with coordinate z,
// U_1 with w = 1/z, transition phi_01 = z^k on the annulus.
//
// Forms on the overlap are Laurent polynomials times dz. Coefficients carry the
// unit 1/(2 pi i) symbolically, so the coboundary test is an exact residue test.

#include "brane_gauge/algebra/scalar.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace brane_gauge::cech {

/// Hermitian metric family on chart 0: f_0 = (1 + |z|^2)^s.
struct MetricFamily {
    int s = 0;
};

struct CechLineBundle {
    int k = 0;
    MetricFamily metric;

    /// O(k) with the metric f_0 = (1 + |z|^2)^{-k}.
    static CechLineBundle with_default_metric(int k) { return {k, MetricFamily{-k}}; }
};

/// sum_n c_n z^n dz, each c_n a rational multiple of the tagged unit 1/(2 pi i).
struct LaurentForm {
    std::map<int, Rational> coeffs;

    [[nodiscard]] Rational coefficient(int n) const {
        auto it = coeffs.find(n);
        return it == coeffs.end() ? Rational(0) : it->second;
    }
    void add(int n, const Rational& c) {
        if (c == 0) return;
        Rational& slot = coeffs[n];
        slot += c;
        if (slot == 0) coeffs.erase(n);
    }
    [[nodiscard]] bool is_zero() const { return coeffs.empty(); }
    [[nodiscard]] Rational residue() const { return coefficient(-1); }
    friend bool operator==(const LaurentForm& a, const LaurentForm& b) { return a.coeffs == b.coeffs; }
};

/// zeta_01 = (1/2 pi i) d log z^k = (k / 2 pi i) dz / z.
inline LaurentForm zeta_cocycle(const CechLineBundle& l) {
    LaurentForm f;
    f.add(-1, Rational(l.k));
    return f;
}

/// beta_0 = sum a_n z^n dz (n >= 0) on U_0 and beta_1 = sum b_n w^n dw (n >= 0) on U_1,
/// both in units of 1/(2 pi i).
struct CoboundaryDecision {
    bool is_coboundary = false;
    Rational obstruction;           // the dz/z coefficient
    std::map<int, Rational> beta0;  // a_n
    std::map<int, Rational> beta1;  // b_n
};

/// Solves beta_1 - beta_0 = zeta on the overlap by matching Laurent coefficients.
/// Since w^n dw = -z^{-n-2} dz, beta_1 fills powers <= -2 and beta_0 powers >= 0;
/// nothing reaches z^{-1}, which is therefore the obstruction.
inline CoboundaryDecision is_coboundary(const LaurentForm& zeta) {
    CoboundaryDecision d;
    d.obstruction = zeta.residue();
    d.is_coboundary = d.obstruction == 0;
    if (!d.is_coboundary) return d;
    for (const auto& [n, c] : zeta.coeffs) {
        if (n >= 0) d.beta0[n] = -c;
        else d.beta1[-n - 2] = -c;
    }
    return d;
}

/// beta_1 - beta_0 as a form on the overlap (witness check).
inline LaurentForm coboundary_of(const std::map<int, Rational>& beta0, const std::map<int, Rational>& beta1) {
    LaurentForm f;
    for (const auto& [n, c] : beta0) f.add(n, -c);
    for (const auto& [n, c] : beta1) f.add(-n - 2, -c);
    return f;
}

inline bool connection_exists(const CechLineBundle& l) { return is_coboundary(zeta_cocycle(l)).is_coboundary; }

/// f_1 = |phi_01|^2 f_0 must extend smoothly and positively across w = 0:
/// |z|^{2k} (1 + |z|^2)^s = |w|^{-2(k+s)} (1 + |w|^2)^s, so the exponent of |w| must vanish.
inline bool metric_consistent(const CechLineBundle& l) { return l.k + l.metric.s == 0; }

/// Exponent of |w|^2 in f_1 written on chart 1, and the (1 + |w|^2) power.
struct ChartOneMetric {
    int w_power = 0;
    int s = 0;
};
inline ChartOneMetric chart_one_metric(const CechLineBundle& l) { return {-(l.k + l.metric.s), l.metric.s}; }

struct ChernIntegral {
    double value = 0.0;           // Richardson-extrapolated
    double coarse = 0.0;          // midpoint rule at half resolution
    double fine = 0.0;            // midpoint rule at full resolution
    double error_estimate = 0.0;  // |fine - coarse| / 3
};

/// Integral over P^1 of (i/2pi) dbar d log f_0. For f_0 = (1 + |z|^2)^s the density is
/// -s / (pi (1 + r^2)^2) dx dy. With r = tan u the measure becomes sin u cos u du dtheta,
/// integrated by the midpoint rule on an n x n grid over [0, pi/2) x [0, 2 pi).
inline ChernIntegral chern_integral(const CechLineBundle& l, int n = 512) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("chern_integral: resolution must be even and >= 2");
    if (!metric_consistent(l))
        throw std::invalid_argument("chern_integral: metric (1+|z|^2)^" + std::to_string(l.metric.s) +
                                    " does not glue for k = " + std::to_string(l.k));
    const double coef = -static_cast<double>(l.metric.s) / std::numbers::pi;
    auto midpoint = [&](int m) {
        const double hu = (std::numbers::pi / 2) / m, ht = 2 * std::numbers::pi / m;
        // Neumaier summation, fixed order
        double sum = 0.0, comp = 0.0;
        for (int i = 0; i < m; ++i) {
            double u = (i + 0.5) * hu;
            double radial = std::sin(u) * std::cos(u);
            for (int j = 0; j < m; ++j) {
                double term = coef * radial * hu * ht;
                double t = sum + term;
                comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
                sum = t;
            }
        }
        return sum + comp;
    };
    ChernIntegral r;
    r.fine = midpoint(n);
    r.coarse = midpoint(n / 2);
    r.value = (4 * r.fine - r.coarse) / 3;
    r.error_estimate = std::abs(r.fine - r.coarse) / 3;
    return r;
}

}  // namespace brane_gauge::cech
