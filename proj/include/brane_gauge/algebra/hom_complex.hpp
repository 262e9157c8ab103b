#pragma once

// Bounded complexes of finite-dimensional vector spaces and their Hom complexes.
//
//   Hom^m(A, B) = prod_p Hom(A^p, B^{p+m})
//   (delta g)^p = d_B g^p + (-1)^{m+1} g^{p+1} d_A
//
// Elements may carry several parallel blocks per position (one per coframe
// element dz_k for Omega^1-valued elements); delta acts on each block alike.

#include "brane_gauge/algebra/linalg.hpp"
#include "brane_gauge/algebra/matrix.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace brane_gauge {

/// Bounded cochain complex of S-vector spaces: d(p) maps degree p to p+1.
template <class S>
class ChainComplex {
public:
    ChainComplex() = default;

    void set_dim(int p, std::size_t r) {
        if (r == 0) dims_.erase(p);
        else dims_[p] = r;
    }
    void set_differential(int p, Matrix<S> d) {
        if (d.rows() != dim(p + 1) || d.cols() != dim(p))
            throw std::invalid_argument("ChainComplex: differential at degree " + std::to_string(p) +
                                        " has shape " + std::to_string(d.rows()) + "x" +
                                        std::to_string(d.cols()) + ", expected " +
                                        std::to_string(dim(p + 1)) + "x" + std::to_string(dim(p)));
        diffs_[p] = std::move(d);
    }

    [[nodiscard]] std::size_t dim(int p) const {
        auto it = dims_.find(p);
        return it == dims_.end() ? 0 : it->second;
    }
    /// d^p, zero of the right shape when not stored.
    [[nodiscard]] Matrix<S> d(int p) const {
        auto it = diffs_.find(p);
        if (it != diffs_.end()) return it->second;
        return Matrix<S>(dim(p + 1), dim(p));
    }
    [[nodiscard]] const std::map<int, std::size_t>& dims() const { return dims_; }
    [[nodiscard]] const std::map<int, Matrix<S>>& differentials() const { return diffs_; }

    [[nodiscard]] bool empty() const { return dims_.empty(); }
    [[nodiscard]] int min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
    [[nodiscard]] int max_degree() const { return dims_.empty() ? -1 : dims_.rbegin()->first; }

    /// Shape consistency and d^{p+1} d^p = 0.
    [[nodiscard]] std::vector<std::string> violations(double tol = kDefaultFloatTolerance) const {
        std::vector<std::string> out;
        for (const auto& [p, m] : diffs_) {
            if (m.rows() != dim(p + 1) || m.cols() != dim(p))
                out.push_back("differential " + std::to_string(p) + " has wrong shape");
        }
        if (!out.empty()) return out;
        for (int p = min_degree() - 1; p <= max_degree(); ++p) {
            if (dim(p) == 0 || dim(p + 2) == 0) continue;
            if (!(d(p + 1) * d(p)).is_zero(tol))
                out.push_back("d^" + std::to_string(p + 1) + " d^" + std::to_string(p) + " != 0");
        }
        return out;
    }
    [[nodiscard]] bool is_valid(double tol = kDefaultFloatTolerance) const { return violations(tol).empty(); }

private:
    std::map<int, std::size_t> dims_;
    std::map<int, Matrix<S>> diffs_;
};

/// Degree-m element of Hom(A, B), possibly with several parallel blocks per position.
template <class S>
struct HomElement {
    int degree = 0;
    std::size_t nblocks = 1;
    std::map<int, std::vector<Matrix<S>>> components;  // p -> blocks A^p -> B^{p+degree}

    /// Block k at position p, zero of the right shape if absent.
    [[nodiscard]] Matrix<S> block(int p, std::size_t k, const ChainComplex<S>& a, const ChainComplex<S>& b) const {
        auto it = components.find(p);
        if (it != components.end() && k < it->second.size()) return it->second[k];
        return Matrix<S>(b.dim(p + degree), a.dim(p));
    }

    [[nodiscard]] bool is_zero(double tol = kDefaultFloatTolerance) const {
        for (const auto& [p, blocks] : components)
            for (const auto& m : blocks)
                if (!m.is_zero(tol)) return false;
        return true;
    }
};

/// Positions p with both A^p and B^{p+m} nonzero, ascending.
template <class S>
std::vector<int> hom_positions(const ChainComplex<S>& a, const ChainComplex<S>& b, int m) {
    std::vector<int> ps;
    for (const auto& [p, r] : a.dims())
        if (b.dim(p + m) > 0) ps.push_back(p);
    return ps;
}

template <class S>
std::size_t hom_dimension(const ChainComplex<S>& a, const ChainComplex<S>& b, int m) {
    std::size_t n = 0;
    for (int p : hom_positions(a, b, m)) n += a.dim(p) * b.dim(p + m);
    return n;
}

template <class S>
void check_hom_shape(const HomElement<S>& x, const ChainComplex<S>& a, const ChainComplex<S>& b) {
    for (const auto& [p, blocks] : x.components) {
        if (blocks.size() > x.nblocks)
            throw std::invalid_argument("HomElement: too many blocks at position " + std::to_string(p));
        for (const auto& m : blocks)
            if (m.rows() != b.dim(p + x.degree) || m.cols() != a.dim(p))
                throw std::invalid_argument("HomElement: block at position " + std::to_string(p) +
                                            " does not map A^p to B^{p+m}");
    }
}

template <class S>
HomElement<S> hom_differential(const HomElement<S>& x, const ChainComplex<S>& a, const ChainComplex<S>& b) {
    check_hom_shape(x, a, b);
    const int m = x.degree;
    HomElement<S> y;
    y.degree = m + 1;
    y.nblocks = x.nblocks;
    const S sign = ScalarTraits<S>::from_int((m + 1) % 2 == 0 ? 1 : -1);
    for (int p : hom_positions(a, b, m + 1)) {
        std::vector<Matrix<S>> blocks;
        bool any = false;
        for (std::size_t k = 0; k < x.nblocks; ++k) {
            Matrix<S> r = b.d(p + m) * x.block(p, k, a, b);
            r += sign * (x.block(p + 1, k, a, b) * a.d(p));
            if (!r.is_zero(0.0)) any = true;
            blocks.push_back(std::move(r));
        }
        if (any) y.components[p] = std::move(blocks);
    }
    return y;
}

/// Coordinates of a single-block element: positions ascending, each block row-major.
template <class S>
std::vector<S> hom_to_vector(const HomElement<S>& x, const ChainComplex<S>& a, const ChainComplex<S>& b,
                             std::size_t block = 0) {
    std::vector<S> v;
    v.reserve(hom_dimension(a, b, x.degree));
    for (int p : hom_positions(a, b, x.degree)) {
        Matrix<S> g = x.block(p, block, a, b);
        v.insert(v.end(), g.entries().begin(), g.entries().end());
    }
    return v;
}

template <class S>
HomElement<S> hom_from_vector(const std::vector<S>& v, const ChainComplex<S>& a, const ChainComplex<S>& b, int m) {
    if (v.size() != hom_dimension(a, b, m)) throw std::invalid_argument("hom_from_vector: length mismatch");
    HomElement<S> x;
    x.degree = m;
    std::size_t off = 0;
    for (int p : hom_positions(a, b, m)) {
        std::size_t r = b.dim(p + m), c = a.dim(p);
        std::vector<S> e(v.begin() + static_cast<std::ptrdiff_t>(off),
                         v.begin() + static_cast<std::ptrdiff_t>(off + r * c));
        off += r * c;
        x.components[p] = {Matrix<S>(r, c, std::move(e))};
    }
    return x;
}

/// Matrix of delta: Hom^m -> Hom^{m+1} in the coordinates of hom_to_vector.
template <class S>
Matrix<S> hom_differential_matrix(const ChainComplex<S>& a, const ChainComplex<S>& b, int m) {
    const std::size_t n = hom_dimension(a, b, m);
    const std::size_t out = hom_dimension(a, b, m + 1);
    Matrix<S> d(out, n);
    std::vector<S> unit(n, ScalarTraits<S>::zero());
    for (std::size_t j = 0; j < n; ++j) {
        unit[j] = ScalarTraits<S>::one();
        auto col = hom_to_vector(hom_differential(hom_from_vector(unit, a, b, m), a, b), a, b);
        for (std::size_t i = 0; i < out; ++i) d(i, j) = col[i];
        unit[j] = ScalarTraits<S>::zero();
    }
    return d;
}

template <class S>
struct CohomologyResult {
    std::size_t dimension = 0;
    std::size_t cocycle_dimension = 0;
    std::size_t coboundary_dimension = 0;
    Matrix<S> representatives;  // columns: one per class, orthogonal to the coboundaries
};

/// ker(d_out) / im(d_in) inside S^n, with minimum-norm representatives.
template <class S>
CohomologyResult<S> cohomology(const Matrix<S>& d_in, const Matrix<S>& d_out, std::size_t n,
                               double tol = kDefaultFloatTolerance) {
    if (d_in.rows() != n && !(d_in.rows() == 0 && d_in.cols() == 0))
        throw std::invalid_argument("cohomology: incoming map has wrong target dimension");
    if (d_out.cols() != n && !(d_out.rows() == 0 && d_out.cols() == 0))
        throw std::invalid_argument("cohomology: outgoing map has wrong source dimension");
    CohomologyResult<S> r;
    Matrix<S> z = d_out.cols() == n ? la::kernel_basis(d_out, tol) : Matrix<S>::identity(n);
    if (n == 0) z = Matrix<S>(0, 0);
    Matrix<S> bdry = d_in.rows() == n && d_in.cols() > 0 ? la::image_basis(d_in, tol) : Matrix<S>(n, 0);
    r.cocycle_dimension = z.cols();
    r.coboundary_dimension = bdry.cols();
    if (r.coboundary_dimension > r.cocycle_dimension)
        throw std::logic_error("cohomology: image exceeds kernel; input is not a complex");
    r.dimension = r.cocycle_dimension - r.coboundary_dimension;
    if (r.dimension == 0) {
        r.representatives = Matrix<S>(n, 0);
        return r;
    }
    Matrix<S> projected = la::complement_projector(bdry, n) * z;
    r.representatives = la::image_basis(projected, tol);
    if (r.representatives.cols() != r.dimension)
        throw la::NumericalRankError("cohomology: representative count disagrees with rank count");
    return r;
}

/// H^p of a chain complex.
template <class S>
CohomologyResult<S> cohomology(const ChainComplex<S>& c, int p, double tol = kDefaultFloatTolerance) {
    return cohomology(c.d(p - 1), c.d(p), c.dim(p), tol);
}

template <class S>
struct HomCohomology {
    std::size_t dimension = 0;
    std::size_t cocycle_dimension = 0;
    std::size_t coboundary_dimension = 0;
    std::vector<HomElement<S>> basis;
};

/// H^m Hom(A, B): cocycles modulo coboundaries, basis of minimum-norm representatives.
template <class S>
HomCohomology<S> hom_cohomology(const ChainComplex<S>& a, const ChainComplex<S>& b, int m,
                                double tol = kDefaultFloatTolerance) {
    const std::size_t n = hom_dimension(a, b, m);
    Matrix<S> d_in = hom_differential_matrix(a, b, m - 1);
    Matrix<S> d_out = hom_differential_matrix(a, b, m);
    auto r = cohomology(d_in, d_out, n, tol);
    HomCohomology<S> h;
    h.dimension = r.dimension;
    h.cocycle_dimension = r.cocycle_dimension;
    h.coboundary_dimension = r.coboundary_dimension;
    for (std::size_t j = 0; j < r.representatives.cols(); ++j)
        h.basis.push_back(hom_from_vector(r.representatives.column(j), a, b, m));
    return h;
}

/// Termwise change of basis: A'^p = P_p A^p, d'^p = P_{p+1} d^p P_p^{-1}.
template <class S>
ChainComplex<S> change_basis(const ChainComplex<S>& c, const std::map<int, Matrix<S>>& p) {
    ChainComplex<S> out;
    for (const auto& [deg, r] : c.dims()) out.set_dim(deg, r);
    auto get = [&](int deg) {
        auto it = p.find(deg);
        return it == p.end() ? Matrix<S>::identity(c.dim(deg)) : it->second;
    };
    for (const auto& [deg, d] : c.differentials())
        out.set_differential(deg, get(deg + 1) * d * la::inverse(get(deg)));
    return out;
}

}  // namespace brane_gauge
