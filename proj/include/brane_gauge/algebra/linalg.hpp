#pragma once

// Rank, kernel, image and projection primitives for both scalar backends.
//
// Exact backend: fraction-free bookkeeping is unnecessary at the sizes used
// here, so plain Gauss-Jordan elimination over GaussRational is used.
// Floating backend: singular value decomposition (Eigen). A rank decision is
// trusted only when the singular values show a gap of at least kRankGapRatio
// around the threshold; otherwise NumericalRankError is thrown.

#include "brane_gauge/algebra/matrix.hpp"

#include <Eigen/Dense>

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace brane_gauge::la {

class NumericalRankError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RankInfo {
    std::size_t rank = 0;
    bool gap_ok = true;
    double gap_ratio = 0.0;  // sigma_{r-1} / sigma_r, infinity when undefined
};

// ---------------------------------------------------------------------------
// Exact elimination
// ---------------------------------------------------------------------------

struct RrefResult {
    Matrix<GaussRational> reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline RrefResult rref(Matrix<GaussRational> m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(pivot, c));
        GaussRational inv = GaussRational(1) / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            GaussRational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

// ---------------------------------------------------------------------------
// Floating SVD helpers
// ---------------------------------------------------------------------------

inline Eigen::MatrixXcd to_eigen(const Matrix<Complex>& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return e;
}

inline Matrix<Complex> from_eigen(const Eigen::MatrixXcd& e) {
    Matrix<Complex> m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
    return m;
}

struct SvdRank {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd;
    RankInfo info;
};

inline RankInfo rank_from_singular_values(const Eigen::VectorXd& sv, double tol) {
    RankInfo info;
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double threshold = tol * std::max(1.0, smax);
    std::size_t r = 0;
    while (r < static_cast<std::size_t>(sv.size()) && sv(static_cast<Eigen::Index>(r)) > threshold) ++r;
    info.rank = r;
    info.gap_ratio = std::numeric_limits<double>::infinity();
    if (r > 0 && r < static_cast<std::size_t>(sv.size())) {
        double below = sv(static_cast<Eigen::Index>(r));
        double above = sv(static_cast<Eigen::Index>(r - 1));
        if (below > 0.0) info.gap_ratio = above / below;
        info.gap_ok = info.gap_ratio >= kRankGapRatio;
    }
    return info;
}

inline SvdRank svd_rank(const Matrix<Complex>& m, double tol) {
    Eigen::MatrixXcd e = to_eigen(m);
    SvdRank out{Eigen::JacobiSVD<Eigen::MatrixXcd>(e, Eigen::ComputeFullU | Eigen::ComputeFullV), {}};
    out.info = rank_from_singular_values(out.svd.singularValues(), tol);
    return out;
}

inline void require_gap(const RankInfo& info) {
    if (!info.gap_ok)
        throw NumericalRankError("ambiguous numerical rank: singular-value gap ratio " +
                                 std::to_string(info.gap_ratio) + " below required " +
                                 std::to_string(kRankGapRatio));
}

// ---------------------------------------------------------------------------
// Backend-generic interface
// ---------------------------------------------------------------------------

template <class S>
RankInfo rank_info(const Matrix<S>& m, double tol = kDefaultFloatTolerance) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    if constexpr (ScalarTraits<S>::exact) {
        (void)tol;
        return {rref(m).pivots.size(), true, std::numeric_limits<double>::infinity()};
    } else {
        return svd_rank(m, tol).info;
    }
}

template <class S>
std::size_t rank(const Matrix<S>& m, double tol = kDefaultFloatTolerance) {
    RankInfo info = rank_info(m, tol);
    require_gap(info);
    return info.rank;
}

/// Columns form a basis of ker(m). Exact: RREF free-variable basis. Float: orthonormal.
template <class S>
Matrix<S> kernel_basis(const Matrix<S>& m, double tol = kDefaultFloatTolerance) {
    const std::size_t n = m.cols();
    if (n == 0) return Matrix<S>(0, 0);
    if (m.rows() == 0) return Matrix<S>::identity(n);
    if constexpr (ScalarTraits<S>::exact) {
        (void)tol;
        auto [red, pivots] = rref(m);
        std::vector<bool> is_pivot(n, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<std::vector<S>> basis;
        for (std::size_t free = 0; free < n; ++free) {
            if (is_pivot[free]) continue;
            std::vector<S> v(n, S{});
            v[free] = S(1);
            for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red(r, free);
            basis.push_back(std::move(v));
        }
        return columns_to_matrix(n, basis);
    } else {
        auto s = svd_rank(m, tol);
        require_gap(s.info);
        const auto& V = s.svd.matrixV();
        auto k = static_cast<Eigen::Index>(n - s.info.rank);
        return from_eigen(V.rightCols(k));
    }
}

/// Columns form a basis of im(m). Exact: pivot columns of m. Float: orthonormal.
template <class S>
Matrix<S> image_basis(const Matrix<S>& m, double tol = kDefaultFloatTolerance) {
    if (m.rows() == 0 || m.cols() == 0) return Matrix<S>(m.rows(), 0);
    if constexpr (ScalarTraits<S>::exact) {
        (void)tol;
        auto pivots = rref(m).pivots;
        Matrix<S> b(m.rows(), pivots.size());
        for (std::size_t k = 0; k < pivots.size(); ++k) b.set_column(k, m.column(pivots[k]));
        return b;
    } else {
        auto s = svd_rank(m, tol);
        require_gap(s.info);
        return from_eigen(s.svd.matrixU().leftCols(static_cast<Eigen::Index>(s.info.rank)));
    }
}

/// Inverse of a square nonsingular matrix.
template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    if constexpr (ScalarTraits<S>::exact) {
        auto [red, pivots] = rref(hstack(m, Matrix<S>::identity(n)));
        if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
            throw std::domain_error("inverse: singular matrix");
        return red.block(0, n, n, n);
    } else {
        if (n == 0) return m;
        Eigen::MatrixXcd e = to_eigen(m);
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(e);
        if (!lu.isInvertible()) throw std::domain_error("inverse: singular matrix");
        return from_eigen(lu.inverse());
    }
}

/// Some x with m x = b, or nullopt when inconsistent.
template <class S>
std::optional<std::vector<S>> solve(const Matrix<S>& m, const std::vector<S>& b,
                                    double tol = kDefaultFloatTolerance) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    const std::size_t n = m.cols();
    if constexpr (ScalarTraits<S>::exact) {
        (void)tol;
        Matrix<S> aug = hstack(m, columns_to_matrix(m.rows(), std::vector<std::vector<S>>{b}));
        auto [red, pivots] = rref(aug);
        if (!pivots.empty() && pivots.back() == n) return std::nullopt;
        std::vector<S> x(n, S{});
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = red(r, n);
        return x;
    } else {
        if (n == 0) {
            for (const auto& v : b)
                if (std::abs(v) > tol) return std::nullopt;
            return std::vector<S>{};
        }
        auto s = svd_rank(m, tol);
        Eigen::VectorXcd rhs(static_cast<Eigen::Index>(b.size()));
        for (std::size_t i = 0; i < b.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = b[i];
        s.svd.setThreshold(tol);
        Eigen::VectorXcd x = s.svd.solve(rhs);
        double resid = (to_eigen(m) * x - rhs).norm();
        if (resid > tol * std::max(1.0, rhs.norm()) * 1e3) return std::nullopt;
        std::vector<S> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = x(static_cast<Eigen::Index>(i));
        return out;
    }
}

/// Orthogonal projector onto span(basis)^perp, with basis columns linearly independent.
template <class S>
Matrix<S> complement_projector(const Matrix<S>& basis, std::size_t dim) {
    Matrix<S> id = Matrix<S>::identity(dim);
    if (basis.cols() == 0) return id;
    Matrix<S> bh = basis.adjoint();
    Matrix<S> gram_inv = inverse(bh * basis);
    return id - basis * gram_inv * bh;
}

/// Orthogonal projector onto span(basis), basis columns linearly independent.
template <class S>
Matrix<S> span_projector(const Matrix<S>& basis, std::size_t dim) {
    if (basis.cols() == 0) return Matrix<S>(dim, dim);
    Matrix<S> bh = basis.adjoint();
    return basis * inverse(bh * basis) * bh;
}

/// Columns span the orthogonal complement of span(basis) inside S^dim.
template <class S>
Matrix<S> orthogonal_complement(const Matrix<S>& basis, std::size_t dim, double tol = kDefaultFloatTolerance) {
    if (basis.cols() == 0) return Matrix<S>::identity(dim);
    return kernel_basis(basis.adjoint(), tol);
}

/// Coordinates of v in the (independent) columns of basis: (B^H B)^{-1} B^H v.
template <class S>
Matrix<S> coordinates_in(const Matrix<S>& basis, const Matrix<S>& v) {
    Matrix<S> bh = basis.adjoint();
    return inverse(bh * basis) * bh * v;
}

}  // namespace brane_gauge::la
