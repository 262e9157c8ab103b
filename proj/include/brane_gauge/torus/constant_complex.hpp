#pragma once

// Constant model on a flat torus C^g / Lambda: complexes of trivial bundles O^r with
// constant differentials, connections d + sum_k A_k dz_k with constant A_k.
// The coframe dz_1..dz_g is orthonormal and the volume is 1, so every
// integral below is a finite sum of traces.

#include "brane_gauge/algebra/hom_complex.hpp"
#include "brane_gauge/algebra/linalg.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace brane_gauge::torus {

template <class S>
using ConstantComplex = ChainComplex<S>;

/// Per degree, g matrices A^i_k acting on F^i.
template <class S>
struct ConnectionFamily {
    std::size_t g = 1;
    std::map<int, std::vector<Matrix<S>>> a;

    [[nodiscard]] Matrix<S> at(int i, std::size_t k, std::size_t rank) const {
        auto it = a.find(i);
        if (it != a.end() && k < it->second.size()) return it->second[k];
        return Matrix<S>(rank, rank);
    }

    static ConnectionFamily zero(const ConstantComplex<S>& f, std::size_t g) {
        ConnectionFamily c;
        c.g = g;
        for (const auto& [i, r] : f.dims()) c.a[i] = std::vector<Matrix<S>>(g, Matrix<S>(r, r));
        return c;
    }
};

/// Degree-0 Omega^1-valued cocycle of Hom(F, F): per degree, g matrices E^i_k.
template <class S>
struct VariationClass {
    HomElement<S> element;   // degree 0, nblocks = g
    bool canonical = false;  // minimum-norm coset representative

    [[nodiscard]] Matrix<S> at(int i, std::size_t k, const ConstantComplex<S>& f) const {
        return element.block(i, k, f, f);
    }
};

/// (k, l) index pairs with k < l in lexicographic order.
inline std::vector<std::pair<std::size_t, std::size_t>> form_pairs(std::size_t g) {
    std::vector<std::pair<std::size_t, std::size_t>> p;
    for (std::size_t k = 0; k < g; ++k)
        for (std::size_t l = k + 1; l < g; ++l) p.emplace_back(k, l);
    return p;
}

struct ConnectionReport {
    bool valid = true;
    double max_residual = 0.0;
    std::vector<std::string> violations;
};

template <class S>
ConnectionReport validate_connection(const ConstantComplex<S>& f, const ConnectionFamily<S>& c,
                                     double tol = kDefaultFloatTolerance) {
    ConnectionReport r;
    auto fail = [&](std::string s) {
        r.valid = false;
        r.violations.push_back(std::move(s));
    };
    for (const auto& msg : f.violations(tol)) fail("complex: " + msg);
    if (c.g == 0) fail("g must be at least 1");
    for (const auto& [i, mats] : c.a) {
        if (f.dim(i) == 0 && !mats.empty()) {
            bool all_empty = true;
            for (const auto& m : mats) all_empty = all_empty && m.rows() == 0 && m.cols() == 0;
            if (!all_empty) fail("connection given at degree " + std::to_string(i) + " where the complex is zero");
        }
        if (mats.size() > c.g) fail("degree " + std::to_string(i) + " has more than g matrices");
        for (const auto& m : mats)
            if (f.dim(i) > 0 && (m.rows() != f.dim(i) || m.cols() != f.dim(i)))
                fail("connection matrix at degree " + std::to_string(i) + " has the wrong shape");
    }
    if (!r.valid) return r;
    for (const auto& [i, rank] : f.dims()) {
        if (f.dim(i + 1) == 0) continue;
        Matrix<S> d = f.d(i);
        for (std::size_t k = 0; k < c.g; ++k) {
            Matrix<S> res = d * c.at(i, k, rank) - c.at(i + 1, k, f.dim(i + 1)) * d;
            double m = res.max_abs();
            r.max_residual = std::max(r.max_residual, m);
            if (!res.is_zero(tol))
                fail("D^" + std::to_string(i) + " A^" + std::to_string(i) + "_" + std::to_string(k + 1) + " != A^" +
                     std::to_string(i + 1) + "_" + std::to_string(k + 1) + " D^" + std::to_string(i));
        }
    }
    return r;
}

template <class S>
void require_compatible(const ConstantComplex<S>& f, const ConnectionFamily<S>& c, double tol = kDefaultFloatTolerance) {
    auto r = validate_connection(f, c, tol);
    if (!r.valid) throw std::invalid_argument("incompatible connection: " + r.violations.front());
}

// ---------------------------------------------------------------------------
// Gauge space: g copies of H^0 Hom(F, F)
// ---------------------------------------------------------------------------

template <class S>
struct GaugeSpace {
    std::size_t g = 1;
    std::size_t endo_dimension = 0;          // dim H^0 Hom(F, F)
    std::vector<VariationClass<S>> basis;    // index a = k * endo_dimension + b
    [[nodiscard]] std::size_t dimension() const { return basis.size(); }
};

template <class S>
GaugeSpace<S> gauge_space_basis(const ConstantComplex<S>& f, std::size_t g, double tol = kDefaultFloatTolerance) {
    if (g == 0) throw std::invalid_argument("gauge_space_basis: g must be at least 1");
    auto h = hom_cohomology(f, f, 0, tol);
    GaugeSpace<S> s;
    s.g = g;
    s.endo_dimension = h.dimension;
    for (std::size_t k = 0; k < g; ++k)
        for (const auto& b : h.basis) {
            VariationClass<S> v;
            v.canonical = true;
            v.element.degree = 0;
            v.element.nblocks = g;
            for (const auto& [p, blocks] : b.components) {
                std::vector<Matrix<S>> mats(g, Matrix<S>(f.dim(p), f.dim(p)));
                mats[k] = blocks.front();
                v.element.components[p] = std::move(mats);
            }
            s.basis.push_back(std::move(v));
        }
    return s;
}

/// base + sum_a lambda_a xi_a.
template <class S>
ConnectionFamily<S> shifted_connection(const ConstantComplex<S>& f, const ConnectionFamily<S>& base,
                                       const std::vector<VariationClass<S>>& basis, const std::vector<S>& lambda) {
    if (lambda.size() != basis.size()) throw std::invalid_argument("shifted_connection: parameter count mismatch");
    ConnectionFamily<S> c;
    c.g = base.g;
    for (const auto& [i, r] : f.dims()) {
        std::vector<Matrix<S>> mats;
        for (std::size_t k = 0; k < base.g; ++k) {
            Matrix<S> m = base.at(i, k, r);
            for (std::size_t a = 0; a < basis.size(); ++a) m += lambda[a] * basis[a].at(i, k, f);
            mats.push_back(std::move(m));
        }
        c.a[i] = std::move(mats);
    }
    return c;
}

/// A + delta_H(h) for a homotopy h in Hom^{-1}(F, Omega^1 F) (g blocks per position).
template <class S>
ConnectionFamily<S> add_homotopy(const ConstantComplex<S>& f, const ConnectionFamily<S>& c, const HomElement<S>& h) {
    if (h.degree != -1) throw std::invalid_argument("add_homotopy: homotopy must have degree -1");
    HomElement<S> dh = hom_differential(h, f, f);
    ConnectionFamily<S> out;
    out.g = c.g;
    for (const auto& [i, r] : f.dims()) {
        std::vector<Matrix<S>> mats;
        for (std::size_t k = 0; k < c.g; ++k) mats.push_back(c.at(i, k, r) + dh.block(i, k, f, f));
        out.a[i] = std::move(mats);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Harmonic splitting F^i = H_i + G_i
// ---------------------------------------------------------------------------

template <class S>
struct CohomologySplitting {
    std::map<int, Matrix<S>> harmonic;    // columns span ker D^i cap (im D^{i-1})^perp
    std::map<int, Matrix<S>> complement;  // columns span the orthogonal complement

    [[nodiscard]] Matrix<S> h(int i) const {
        auto it = harmonic.find(i);
        return it == harmonic.end() ? Matrix<S>(0, 0) : it->second;
    }
    [[nodiscard]] std::size_t dim(int i) const { return h(i).cols(); }
    /// Degrees with nonzero cohomology.
    [[nodiscard]] std::vector<int> degrees() const {
        std::vector<int> d;
        for (const auto& [i, m] : harmonic)
            if (m.cols() > 0) d.push_back(i);
        return d;
    }
    /// P_H: orthogonal projector onto H_i.
    [[nodiscard]] Matrix<S> projector(int i, std::size_t rank) const {
        return la::span_projector(h(i).cols() == 0 ? Matrix<S>(rank, 0) : h(i), rank);
    }
};

template <class S>
CohomologySplitting<S> cohomology_splitting(const ConstantComplex<S>& f, double tol = kDefaultFloatTolerance) {
    CohomologySplitting<S> s;
    for (const auto& [i, r] : f.dims()) {
        Matrix<S> dout = f.d(i);
        Matrix<S> din = f.d(i - 1);
        Matrix<S> bdry = din.cols() > 0 ? la::image_basis(din, tol) : Matrix<S>(r, 0);
        Matrix<S> constraints = bdry.cols() > 0 ? vstack(dout, bdry.adjoint()) : dout;
        Matrix<S> h = la::kernel_basis(constraints, tol);
        if (h.cols() == 0) h = Matrix<S>(r, 0);
        s.harmonic[i] = h;
        s.complement[i] = la::orthogonal_complement(h, r, tol);
        if (s.complement[i].cols() == 0) s.complement[i] = Matrix<S>(r, 0);
    }
    return s;
}

/// Default cohomology metric: the Gram matrix of the harmonic basis (identity when orthonormal).
template <class S>
using HermitianData = std::map<int, Matrix<S>>;

template <class S>
HermitianData<S> default_metrics(const CohomologySplitting<S>& s) {
    HermitianData<S> h;
    for (const auto& [i, b] : s.harmonic)
        if (b.cols() > 0) h[i] = b.adjoint() * b;
    return h;
}

/// Per degree, g matrices on H_i.
template <class S>
using Induced = std::map<int, std::vector<Matrix<S>>>;

/// theta^i_k = (H^* H)^{-1} H^* A^i_k H. Asserts A preserves ker D^i and im D^{i-1}.
template <class S>
Induced<S> induced_connection(const ConstantComplex<S>& f, const ConnectionFamily<S>& c,
                              const CohomologySplitting<S>& split, double tol = kDefaultFloatTolerance) {
    require_compatible(f, c, tol);
    Induced<S> out;
    for (const auto& [i, r] : f.dims()) {
        Matrix<S> h = split.h(i);
        Matrix<S> din = f.d(i - 1);
        Matrix<S> bdry = din.cols() > 0 ? la::image_basis(din, tol) : Matrix<S>(r, 0);
        Matrix<S> leave_im = bdry.cols() > 0 ? la::complement_projector(bdry, r) : Matrix<S>(0, 0);
        std::vector<Matrix<S>> mats;
        for (std::size_t k = 0; k < c.g; ++k) {
            Matrix<S> a = c.at(i, k, r);
            if (bdry.cols() > 0 && !(leave_im * (a * bdry)).is_zero(tol * std::max(1.0, a.max_abs())))
                throw std::logic_error("induced_connection: A does not preserve im D at degree " + std::to_string(i));
            if (h.cols() > 0 && f.dim(i + 1) > 0 && !(f.d(i) * a * h).is_zero(tol * std::max(1.0, a.max_abs())))
                throw std::logic_error("induced_connection: A does not preserve ker D at degree " + std::to_string(i));
            if (h.cols() == 0) continue;
            mats.push_back(la::coordinates_in(h, a * h));
        }
        if (h.cols() > 0) out[i] = std::move(mats);
    }
    return out;
}

/// Induced action of a variation on cohomology (same formula, linear in E).
template <class S>
Induced<S> induced_variation(const ConstantComplex<S>& f, const VariationClass<S>& v,
                             const CohomologySplitting<S>& split) {
    Induced<S> out;
    for (const auto& [i, r] : f.dims()) {
        Matrix<S> h = split.h(i);
        if (h.cols() == 0) continue;
        std::vector<Matrix<S>> mats;
        for (std::size_t k = 0; k < v.element.nblocks; ++k) mats.push_back(la::coordinates_in(h, v.at(i, k, f) * h));
        out[i] = std::move(mats);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Curvature, norms, trace form
// ---------------------------------------------------------------------------

/// C_kl = [theta_k, theta_l] for k < l, in form_pairs order.
template <class S>
std::vector<Matrix<S>> curvature(const std::vector<Matrix<S>>& theta) {
    std::vector<Matrix<S>> c;
    for (auto [k, l] : form_pairs(theta.size())) c.push_back(commutator(theta[k], theta[l]));
    return c;
}

template <class S>
std::map<int, std::vector<Matrix<S>>> curvature(const Induced<S>& theta) {
    std::map<int, std::vector<Matrix<S>>> c;
    for (const auto& [i, t] : theta) c[i] = curvature(t);
    return c;
}

/// sum_{k<l} tr(h^{-1} C^* h C): the End-norm induced by h, unchanged by h -> t h.
template <class S>
S curvature_norm(const std::vector<Matrix<S>>& c, const Matrix<S>& h) {
    S total = ScalarTraits<S>::zero();
    if (c.empty()) return total;
    Matrix<S> hinv = la::inverse(h);
    for (const auto& m : c) total += trace(hinv * m.adjoint() * h * m);
    return total;
}

template <class S>
S curvature_norm(const std::vector<Matrix<S>>& c) {
    if (c.empty()) return ScalarTraits<S>::zero();
    return curvature_norm(c, Matrix<S>::identity(c.front().rows()));
}

/// sum_{k<l} tr(C_kl C_kl), no conjugation.
template <class S>
S phi_trace_form(const std::vector<Matrix<S>>& c) {
    S total = ScalarTraits<S>::zero();
    for (const auto& m : c) total += trace(m * m);
    return total;
}

template <class S>
bool is_flat(const std::vector<Matrix<S>>& c, double tol = kDefaultFloatTolerance) {
    for (const auto& m : c)
        if (!m.is_zero(tol)) return false;
    return true;
}

/// Alternating sum over cohomology degrees of curvature norms: the brane functional.
template <class S>
S ym_value(const Induced<S>& theta, const HermitianData<S>& metrics) {
    S total = ScalarTraits<S>::zero();
    for (const auto& [i, t] : theta) {
        auto it = metrics.find(i);
        if (it == metrics.end()) throw std::invalid_argument("ym_value: missing metric at degree " + std::to_string(i));
        S v = curvature_norm(curvature(t), it->second);
        if (i % 2 == 0) total += v;
        else total -= v;
    }
    return total;
}

template <class S>
struct EulerPoincare {
    S lhs{};
    S rhs{};
    double residual = 0.0;
};

/// sum_i (-1)^i Phi(A^i) against sum_i (-1)^i Phi(theta^i).
template <class S>
EulerPoincare<S> euler_poincare_check(const ConstantComplex<S>& f, const ConnectionFamily<S>& c,
                                      double tol = kDefaultFloatTolerance) {
    auto split = cohomology_splitting(f, tol);
    auto theta = induced_connection(f, c, split, tol);
    EulerPoincare<S> e;
    e.lhs = ScalarTraits<S>::zero();
    e.rhs = ScalarTraits<S>::zero();
    for (const auto& [i, r] : f.dims()) {
        std::vector<Matrix<S>> a;
        for (std::size_t k = 0; k < c.g; ++k) a.push_back(c.at(i, k, r));
        S v = phi_trace_form(curvature(a));
        if (i % 2 == 0) e.lhs += v;
        else e.lhs -= v;
    }
    for (const auto& [i, t] : theta) {
        S v = phi_trace_form(curvature(t));
        if (i % 2 == 0) e.rhs += v;
        else e.rhs -= v;
    }
    e.residual = std::abs(ScalarTraits<S>::to_complex(e.lhs - e.rhs));
    return e;
}

// ---------------------------------------------------------------------------
// Mapping cone with connections
// ---------------------------------------------------------------------------

/// Chain map f: (A, alpha) -> (B, beta) with f alpha_k = beta_k f.
template <class S>
struct CompatibleMap {
    ConstantComplex<S> source;
    ConnectionFamily<S> alpha;
    ConstantComplex<S> target;
    ConnectionFamily<S> beta;
    std::map<int, Matrix<S>> f;
    HermitianData<S> source_metrics;  // optional per-term metrics
    HermitianData<S> target_metrics;

    [[nodiscard]] Matrix<S> at(int i) const {
        auto it = f.find(i);
        if (it != f.end()) return it->second;
        return Matrix<S>(target.dim(i), source.dim(i));
    }
};

template <class S>
std::vector<std::string> compatible_map_violations(const CompatibleMap<S>& m, double tol = kDefaultFloatTolerance) {
    std::vector<std::string> v;
    if (m.alpha.g != m.beta.g) v.push_back("source and target connections have different g");
    for (const auto& s : validate_connection(m.source, m.alpha, tol).violations) v.push_back("source: " + s);
    for (const auto& s : validate_connection(m.target, m.beta, tol).violations) v.push_back("target: " + s);
    if (!v.empty()) return v;
    for (const auto& [i, fi] : m.f)
        if (fi.rows() != m.target.dim(i) || fi.cols() != m.source.dim(i))
            v.push_back("f^" + std::to_string(i) + " has the wrong shape");
    if (!v.empty()) return v;
    std::set<int> degs;
    for (const auto& [i, r] : m.source.dims()) degs.insert(i);
    for (const auto& [i, r] : m.target.dims()) degs.insert(i);
    for (int i : degs) {
        if (!(m.target.d(i) * m.at(i) - m.at(i + 1) * m.source.d(i)).is_zero(tol))
            v.push_back("f does not commute with the differentials at degree " + std::to_string(i));
        for (std::size_t k = 0; k < m.alpha.g; ++k) {
            Matrix<S> lhs = m.at(i) * m.alpha.at(i, k, m.source.dim(i));
            Matrix<S> rhs = m.beta.at(i, k, m.target.dim(i)) * m.at(i);
            if (!(lhs - rhs).is_zero(tol))
                v.push_back("f does not intertwine the connections at degree " + std::to_string(i));
        }
    }
    return v;
}

template <class S>
struct ConeResult {
    ConstantComplex<S> complex;
    ConnectionFamily<S> connection;
    HermitianData<S> term_metrics;
};

/// C^i = A^{i+1} + B^i, d(a, b) = (d a, (-1)^{deg a} f a + d b), connection (alpha, beta).
template <class S>
ConeResult<S> mapping_cone(const CompatibleMap<S>& m, double tol = kDefaultFloatTolerance) {
    auto v = compatible_map_violations(m, tol);
    if (!v.empty()) throw std::invalid_argument("mapping_cone: " + v.front());
    ConeResult<S> out;
    out.connection.g = m.alpha.g;
    std::set<int> degs;
    for (const auto& [i, r] : m.source.dims()) degs.insert(i - 1);
    for (const auto& [i, r] : m.target.dims()) degs.insert(i);
    for (int i : degs) out.complex.set_dim(i, m.source.dim(i + 1) + m.target.dim(i));
    for (int i : degs) {
        const std::size_t a0 = m.source.dim(i + 1), a1 = m.source.dim(i + 2);
        const std::size_t b0 = m.target.dim(i), b1 = m.target.dim(i + 1);
        if (a0 + b0 > 0) {
            std::vector<Matrix<S>> mats;
            for (std::size_t k = 0; k < m.alpha.g; ++k)
                mats.push_back(direct_sum(m.alpha.at(i + 1, k, a0), m.beta.at(i, k, b0)));
            out.connection.a[i] = std::move(mats);
            auto hs = m.source_metrics.find(i + 1);
            auto ht = m.target_metrics.find(i);
            Matrix<S> hs_m = hs != m.source_metrics.end() ? hs->second : Matrix<S>::identity(a0);
            Matrix<S> ht_m = ht != m.target_metrics.end() ? ht->second : Matrix<S>::identity(b0);
            out.term_metrics[i] = direct_sum(hs_m, ht_m);
        }
        if (a0 + b0 == 0 || a1 + b1 == 0) continue;
        Matrix<S> d(a1 + b1, a0 + b0);
        if (a1 > 0 && a0 > 0) d.set_block(0, 0, m.source.d(i + 1));
        const S sign = ScalarTraits<S>::from_int((i + 1) % 2 == 0 ? 1 : -1);
        if (b1 > 0 && a0 > 0) d.set_block(a1, 0, sign * m.at(i + 1));
        if (b1 > 0 && b0 > 0) d.set_block(a1, a0, m.target.d(i));
        out.complex.set_differential(i, d);
    }
    return out;
}

/// YM of a compatible connection: induced connections on the harmonic splitting, default metrics.
template <class S>
S brane_ym(const ConstantComplex<S>& f, const ConnectionFamily<S>& c, double tol = kDefaultFloatTolerance) {
    auto split = cohomology_splitting(f, tol);
    return ym_value(induced_connection(f, c, split, tol), default_metrics(split));
}

template <class S>
struct ConeAdditivity {
    S ym_alpha{}, ym_beta{}, ym_cone{};
    double residual = 0.0;  // |YM(beta) - YM(alpha) - YM(cone)|
};

template <class S>
ConeAdditivity<S> cone_additivity(const CompatibleMap<S>& m, double tol = kDefaultFloatTolerance) {
    auto cone = mapping_cone(m, tol);
    ConeAdditivity<S> r;
    r.ym_alpha = brane_ym(m.source, m.alpha, tol);
    r.ym_beta = brane_ym(m.target, m.beta, tol);
    r.ym_cone = brane_ym(cone.complex, cone.connection, tol);
    r.residual = ScalarTraits<S>::abs(r.ym_beta - r.ym_alpha - r.ym_cone);
    return r;
}

}  // namespace brane_gauge::torus
