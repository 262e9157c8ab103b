#pragma once

// The brane Yang-Mills functional on the affine space of gauge fields
// psi = base + sum_a lambda_a xi_a, as an explicit real polynomial in
// (Re lambda_a, Im lambda_a), plus a multistart Newton solver for its
// stationary points.
//
// Real variables are interleaved: x[2a] = Re lambda_a, x[2a+1] = Im lambda_a.

#include "brane_gauge/algebra/polynomial.hpp"
#include "brane_gauge/torus/constant_complex.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace brane_gauge::ym {

using torus::CohomologySplitting;
using torus::ConnectionFamily;
using torus::ConstantComplex;
using torus::HermitianData;
using torus::Induced;
using torus::VariationClass;

template <class S>
struct YMInstance {
    ConstantComplex<S> f;
    ConnectionFamily<S> base;
    std::vector<VariationClass<S>> basis;
    CohomologySplitting<S> split;
    HermitianData<S> metrics;  // on harmonic coordinates, per cohomology degree
    std::map<int, int> signs;  // (-1)^i

    [[nodiscard]] std::size_t m() const { return basis.size(); }
    [[nodiscard]] std::size_t g() const { return base.g; }
    [[nodiscard]] std::size_t nvars() const { return 2 * basis.size(); }
};

/// Builds an instance with the harmonic splitting and default metrics; validates shapes and compatibility.
template <class S>
YMInstance<S> make_instance(const ConstantComplex<S>& f, const ConnectionFamily<S>& base,
                            const std::vector<VariationClass<S>>& basis, double tol = kDefaultFloatTolerance) {
    torus::require_compatible(f, base, tol);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const auto& e = basis[a].element;
        if (e.degree != 0 || e.nblocks != base.g)
            throw std::invalid_argument("make_instance: variation " + std::to_string(a) + " has wrong degree or block count");
        check_hom_shape(e, f, f);
        if (!hom_differential(e, f, f).is_zero(tol))
            throw std::invalid_argument("make_instance: variation " + std::to_string(a) + " is not a cocycle");
    }
    YMInstance<S> inst;
    inst.f = f;
    inst.base = base;
    inst.basis = basis;
    inst.split = torus::cohomology_splitting(f, tol);
    inst.metrics = torus::default_metrics(inst.split);
    for (int i : inst.split.degrees()) inst.signs[i] = (i % 2 == 0) ? 1 : -1;
    return inst;
}

template <class S>
using RealPolyOf = decltype(real_part(std::declval<Polynomial<S>>()));

template <class R>
struct YMPolynomialSet {
    std::size_t nvars = 0;
    std::map<int, R> per_degree;  // P^i = |K_{theta^i}|^2
    std::map<int, int> signs;
    R total;                      // sum_i (-1)^i P^i
};

namespace detail {

template <class S>
S imag_unit() {
    if constexpr (std::is_same_v<S, GaussRational>) return GaussRational(Rational(0), Rational(1));
    else return S(0.0, 1.0);
}

template <class S>
struct PolyMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Polynomial<S>> e;

    PolyMat(std::size_t r, std::size_t c, std::size_t nvars) : rows(r), cols(c), e(r * c, Polynomial<S>(nvars)) {}
    Polynomial<S>& operator()(std::size_t r, std::size_t c) { return e[r * cols + c]; }
    const Polynomial<S>& operator()(std::size_t r, std::size_t c) const { return e[r * cols + c]; }
};

template <class S>
PolyMat<S> operator*(const PolyMat<S>& a, const PolyMat<S>& b) {
    PolyMat<S> c(a.rows, b.cols, a.e.empty() ? 0 : a.e.front().nvars());
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <class S>
PolyMat<S> operator*(const Matrix<S>& a, const PolyMat<S>& b) {
    PolyMat<S> c(a.rows(), b.cols, b.e.empty() ? 0 : b.e.front().nvars());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (ScalarTraits<S>::is_zero(a(i, k), 0.0)) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <class S>
PolyMat<S> commutator(const PolyMat<S>& a, const PolyMat<S>& b) {
    PolyMat<S> ab = a * b;
    PolyMat<S> ba = b * a;
    for (std::size_t i = 0; i < ab.e.size(); ++i) ab.e[i] -= ba.e[i];
    return ab;
}

template <class S>
PolyMat<S> adjoint(const PolyMat<S>& a) {
    PolyMat<S> t(a.cols, a.rows, a.e.empty() ? 0 : a.e.front().nvars());
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j).conj();
    return t;
}

/// tr(a b) without forming the product.
template <class S>
Polynomial<S> trace_product(const PolyMat<S>& a, const PolyMat<S>& b, std::size_t nvars) {
    Polynomial<S> t(nvars);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k)
            if (!a(i, k).is_zero() && !b(k, i).is_zero()) t += a(i, k) * b(k, i);
    return t;
}

template <class R>
R cleaned(const R& p) {
    if constexpr (std::is_same_v<R, RealPoly>) return p.pruned(1e-13 * std::max(1.0, p.max_abs_coefficient()));
    else return p;
}

}  // namespace detail

/// Induced connection and variations on harmonic coordinates.
template <class S>
struct InducedPieces {
    Induced<S> base;
    std::vector<Induced<S>> zeta;  // per basis element
};

template <class S>
InducedPieces<S> induced_pieces(const YMInstance<S>& inst, double tol = kDefaultFloatTolerance) {
    InducedPieces<S> p;
    p.base = torus::induced_connection(inst.f, inst.base, inst.split, tol);
    for (const auto& v : inst.basis) p.zeta.push_back(torus::induced_variation(inst.f, v, inst.split));
    return p;
}

/// theta^i(lambda) = theta~^i + sum_a lambda_a zeta_a^i, computed directly.
template <class S>
Induced<S> theta_at(const YMInstance<S>& inst, const InducedPieces<S>& pieces, const std::vector<S>& lambda) {
    if (lambda.size() != inst.m()) throw std::invalid_argument("theta_at: parameter count mismatch");
    Induced<S> out = pieces.base;
    for (auto& [i, mats] : out)
        for (std::size_t k = 0; k < mats.size(); ++k)
            for (std::size_t a = 0; a < lambda.size(); ++a) mats[k] += lambda[a] * pieces.zeta[a].at(i)[k];
    return out;
}

/// Expands each P^i symbolically. Coefficients are exact on the exact backend.
template <class S>
YMPolynomialSet<RealPolyOf<S>> assemble(const YMInstance<S>& inst, double tol = kDefaultFloatTolerance) {
    using R = RealPolyOf<S>;
    const std::size_t nv = inst.nvars();
    const std::size_t m = inst.m();
    auto pieces = induced_pieces(inst, tol);

    std::vector<Polynomial<S>> lam;
    for (std::size_t a = 0; a < m; ++a)
        lam.push_back(Polynomial<S>::variable(nv, 2 * a) + Polynomial<S>::variable(nv, 2 * a + 1, detail::imag_unit<S>()));

    YMPolynomialSet<R> out;
    out.nvars = nv;
    out.signs = inst.signs;
    out.total = R(nv);
    for (const auto& [i, base] : pieces.base) {
        const std::size_t d = inst.split.dim(i);
        std::vector<detail::PolyMat<S>> theta;
        for (std::size_t k = 0; k < inst.g(); ++k) {
            detail::PolyMat<S> t(d, d, nv);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) {
                    t(r, c) = Polynomial<S>::constant(nv, base[k](r, c));
                    for (std::size_t a = 0; a < m; ++a) {
                        const S& z = pieces.zeta[a].at(i)[k](r, c);
                        if (!ScalarTraits<S>::is_zero(z, 0.0)) t(r, c) += lam[a] * z;
                    }
                }
            theta.push_back(std::move(t));
        }
        const Matrix<S>& h = inst.metrics.at(i);
        Matrix<S> hinv = la::inverse(h);
        Polynomial<S> norm(nv);
        for (auto [k, l] : torus::form_pairs(inst.g())) {
            auto c = detail::commutator(theta[k], theta[l]);
            norm += detail::trace_product(hinv * detail::adjoint(c), h * c, nv);
        }
        R p = detail::cleaned(real_part(norm));
        out.per_degree.emplace(i, p);
        if (inst.signs.at(i) > 0) out.total += p;
        else out.total -= p;
    }
    return out;
}

enum class Mode { total, per_degree };

/// Real gradient equations; per-degree mode stacks the gradients of every P^i.
template <class R>
std::vector<R> stationarity_system(const YMPolynomialSet<R>& polys, Mode mode) {
    std::vector<R> eqs;
    auto push_gradient = [&](const R& p) {
        for (std::size_t v = 0; v < polys.nvars; ++v) eqs.push_back(detail::cleaned(p.derivative(v)));
    };
    if (mode == Mode::total) push_gradient(polys.total);
    else
        for (const auto& [i, p] : polys.per_degree) push_gradient(p);
    return eqs;
}

template <class R>
int max_equation_degree(const std::vector<R>& eqs) {
    int d = -1;
    for (const auto& e : eqs) d = std::max(d, e.total_degree());
    return d;
}

// ---------------------------------------------------------------------------
// Multistart Newton
// ---------------------------------------------------------------------------

struct SolveOptions {
    std::size_t seeds = 200;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    double box = 3.0;
    int max_iterations = 100;
    double cluster_radius = 1e-6;
    double hessian_rank_tol = 1e-6;
    double escape_factor = 10.0;  // starts leaving [-escape_factor * box, ...]^n are reported, not accepted
    unsigned threads = 0;  // 0: hardware concurrency, capped by BRANE_GAUGE_THREADS
};

struct StartOutcome {
    bool converged = false;
    bool escaped = false;
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> x;
};

struct CriticalPoint {
    std::vector<Complex> lambda;
    std::vector<double> x;
    double residual = 0.0;
    std::size_t hessian_rank = 0;
    double ym_value = 0.0;
    std::map<int, bool> flat;
    std::size_t members = 1;
};

struct SolveResult {
    std::size_t nvars = 0;
    bool all_critical = false;  // the system is identically zero
    std::vector<CriticalPoint> clusters;
    std::vector<StartOutcome> starts;
    [[nodiscard]] std::size_t converged_starts() const {
        std::size_t n = 0;
        for (const auto& s : starts) n += s.converged ? 1 : 0;
        return n;
    }
};

inline unsigned solver_threads(unsigned requested) {
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    if (const char* env = std::getenv("BRANE_GAUGE_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

/// Compiled system F(x) = 0 with its Jacobian.
class CompiledSystem {
public:
    CompiledSystem(const std::vector<RealPoly>& eqs, std::size_t nvars) : nvars_(nvars) {
        for (const auto& e : eqs) {
            if (e.nvars() != nvars) throw std::invalid_argument("CompiledSystem: variable count mismatch");
            f_.emplace_back(e);
            max_power_ = std::max(max_power_, f_.back().max_power());
            for (std::size_t v = 0; v < nvars; ++v) {
                jac_.emplace_back(e.derivative(v));
                max_power_ = std::max(max_power_, jac_.back().max_power());
            }
        }
    }

    [[nodiscard]] std::size_t size() const { return f_.size(); }
    [[nodiscard]] std::size_t nvars() const { return nvars_; }

    [[nodiscard]] Eigen::VectorXd value(const std::vector<double>& x) const {
        auto pw = CompiledPoly::power_table(x, max_power_);
        Eigen::VectorXd v(static_cast<Eigen::Index>(f_.size()));
        for (std::size_t r = 0; r < f_.size(); ++r) v(static_cast<Eigen::Index>(r)) = f_[r].evaluate_with_powers(pw, max_power_ + 1);
        return v;
    }

    [[nodiscard]] Eigen::MatrixXd jacobian(const std::vector<double>& x) const {
        auto pw = CompiledPoly::power_table(x, max_power_);
        Eigen::MatrixXd j(static_cast<Eigen::Index>(f_.size()), static_cast<Eigen::Index>(nvars_));
        for (std::size_t r = 0; r < f_.size(); ++r)
            for (std::size_t c = 0; c < nvars_; ++c)
                j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    jac_[r * nvars_ + c].evaluate_with_powers(pw, max_power_ + 1);
        return j;
    }

private:
    std::size_t nvars_;
    int max_power_ = 0;
    std::vector<CompiledPoly> f_;
    std::vector<CompiledPoly> jac_;
};

inline std::size_t numerical_rank(const Eigen::MatrixXd& j, double rel) {
    if (j.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
    const auto& s = svd.singularValues();
    double cut = rel * std::max(1.0, s.size() ? s(0) : 0.0);
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cut ? 1 : 0;
    return r;
}

/// Gauss-Newton with pseudo-inverse steps and step halving, from one start.
inline StartOutcome newton(const CompiledSystem& sys, std::vector<double> x, const SolveOptions& opt) {
    StartOutcome out;
    Eigen::VectorXd fx = sys.value(x);
    double res = fx.size() ? fx.cwiseAbs().maxCoeff() : 0.0;
    // once below tol, keep polishing while the residual still halves
    int polish = 0;
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opt.max_iterations; ++it) {
        out.iterations = it + 1;
        if (res < opt.tol) {
            if (polish >= 10 || (polish > 0 && res > 0.5 * prev)) break;
            ++polish;
        }
        prev = res;
        Eigen::MatrixXd j = sys.jacobian(x);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& s = svd.singularValues();
        double cut = 1e-12 * std::max(1e-300, s.size() ? s(0) : 0.0);
        Eigen::VectorXd utf = svd.matrixU().adjoint() * fx;
        for (Eigen::Index i = 0; i < s.size(); ++i) utf(i) = s(i) > cut ? utf(i) / s(i) : 0.0;
        Eigen::VectorXd step = -(svd.matrixV() * utf);
        double norm0 = fx.norm();
        bool improved = false;
        for (int h = 0; h < 40; ++h) {
            std::vector<double> y = x;
            for (std::size_t v = 0; v < y.size(); ++v) y[v] += step(static_cast<Eigen::Index>(v));
            Eigen::VectorXd fy = sys.value(y);
            if (std::isfinite(fy.norm()) && fy.norm() < norm0) {
                x = std::move(y);
                fx = std::move(fy);
                improved = true;
                break;
            }
            step *= 0.5;
        }
        res = fx.size() ? fx.cwiseAbs().maxCoeff() : 0.0;
        if (!improved) break;
        for (double v : x) out.escaped = out.escaped || std::abs(v) > opt.escape_factor * opt.box;
        if (out.escaped) break;
    }
    out.converged = res < opt.tol && !out.escaped;
    out.residual = res;
    out.x = std::move(x);
    return out;
}

/// Solves F = 0 from deterministic pseudo-random starts in [-box, box]^n.
/// Start k draws from mt19937_64(seed_seq{seed, k}), so results do not depend on scheduling.
inline SolveResult solve_system(const std::vector<RealPoly>& eqs, std::size_t nvars, const SolveOptions& opt) {
    if (!(opt.tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");
    SolveResult result;
    result.nvars = nvars;
    bool zero = true;
    for (const auto& e : eqs)
        if (e.max_abs_coefficient() > 1e-12) zero = false;
    if (zero) {
        result.all_critical = true;
        return result;
    }
    CompiledSystem sys(eqs, nvars);
    result.starts.resize(opt.seeds);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < opt.seeds; k = next++) {
            std::seed_seq sq{static_cast<std::uint64_t>(opt.seed), static_cast<std::uint64_t>(k)};
            std::mt19937_64 rng(sq);
            std::uniform_real_distribution<double> u(-opt.box, opt.box);
            std::vector<double> x0(nvars);
            for (auto& v : x0) v = u(rng);
            result.starts[k] = newton(sys, std::move(x0), opt);
        }
    };
    unsigned nt = std::min<unsigned>(solver_threads(opt.threads), static_cast<unsigned>(std::max<std::size_t>(1, opt.seeds)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& s : result.starts) {
        if (!s.converged) continue;
        bool joined = false;
        for (auto& c : result.clusters) {
            double d2 = 0.0;
            for (std::size_t v = 0; v < nvars; ++v) d2 += (c.x[v] - s.x[v]) * (c.x[v] - s.x[v]);
            if (std::sqrt(d2) <= opt.cluster_radius) {
                ++c.members;
                joined = true;
                break;
            }
        }
        if (joined) continue;
        CriticalPoint p;
        p.x = s.x;
        p.residual = s.residual;
        for (std::size_t a = 0; 2 * a + 1 < nvars; ++a) p.lambda.emplace_back(s.x[2 * a], s.x[2 * a + 1]);
        p.hessian_rank = numerical_rank(sys.jacobian(s.x), opt.hessian_rank_tol);
        result.clusters.push_back(std::move(p));
    }
    std::sort(result.clusters.begin(), result.clusters.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.x < b.x; });
    return result;
}

/// Stationary points of the assembled functional, with values and per-degree flatness.
inline SolveResult solve(const YMPolynomialSet<RealPoly>& polys, Mode mode, const SolveOptions& opt) {
    auto eqs = stationarity_system(polys, mode);
    SolveResult r = solve_system(eqs, polys.nvars, opt);
    for (auto& c : r.clusters) {
        c.ym_value = polys.total.evaluate(c.x);
        for (const auto& [i, p] : polys.per_degree) c.flat[i] = p.evaluate(c.x) <= opt.tol;
    }
    return r;
}

struct CountReport {
    std::size_t m = 0;
    std::size_t isolated = 0;
    std::size_t degenerate = 0;
    bool all_critical = false;
    double bezout_ceiling = 1.0;  // 3^m
    bool bound_applies = false;   // m = 2 and every cluster isolated
    bool bound_holds = true;      // isolated <= 9 when it applies
};

inline CountReport count_report(const SolveResult& r) {
    CountReport c;
    c.m = r.nvars / 2;
    c.all_critical = r.all_critical;
    c.bezout_ceiling = std::pow(3.0, static_cast<double>(c.m));
    for (const auto& p : r.clusters) (p.hessian_rank == r.nvars ? c.isolated : c.degenerate)++;
    c.bound_applies = c.m == 2 && !r.all_critical && c.degenerate == 0;
    c.bound_holds = !c.bound_applies || c.isolated <= 9;
    return c;
}

// ---------------------------------------------------------------------------
// Per-degree criterion and single-degree variations
// ---------------------------------------------------------------------------

/// Norm of the projection of K_theta onto im(E -> ([theta_k, E_l] + [E_k, theta_l])_{k<l}),
/// E ranging over all of End(H)^g, in the inner product tr(h^{-1} X^* h Y).
inline double per_degree_residual(const std::vector<Matrix<Complex>>& theta, const Matrix<Complex>& h) {
    const std::size_t g = theta.size();
    if (g < 2) return 0.0;
    const std::size_t d = theta.front().rows();
    auto pairs = torus::form_pairs(g);
    Eigen::MatrixXcd hh = la::to_eigen(h);
    Eigen::LLT<Eigen::MatrixXcd> llt(hh);
    if (llt.info() != Eigen::Success) throw std::invalid_argument("per_degree_residual: metric not positive definite");
    Eigen::MatrixXcd lt = llt.matrixL().adjoint();
    Eigen::MatrixXcd lt_inv = lt.inverse();
    // X -> L^* X L^{-*} is an isometry onto Frobenius
    auto iso = [&](const Matrix<Complex>& x) -> Eigen::MatrixXcd { return lt * la::to_eigen(x) * lt_inv; };
    const Eigen::Index blk = static_cast<Eigen::Index>(d * d);
    const Eigen::Index rows = blk * static_cast<Eigen::Index>(pairs.size());
    Eigen::MatrixXcd vmap(rows, static_cast<Eigen::Index>(g * d * d));
    Eigen::VectorXcd kvec(rows);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto [k, l] = pairs[p];
        Eigen::MatrixXcd kk = iso(commutator(theta[k], theta[l]));
        for (Eigen::Index e = 0; e < blk; ++e) kvec(static_cast<Eigen::Index>(p) * blk + e) = kk(e / static_cast<Eigen::Index>(d), e % static_cast<Eigen::Index>(d));
    }
    Eigen::Index col = 0;
    for (std::size_t q = 0; q < g; ++q)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c, ++col) {
                Matrix<Complex> e(d, d);
                e(r, c) = 1.0;
                for (std::size_t p = 0; p < pairs.size(); ++p) {
                    auto [k, l] = pairs[p];
                    Matrix<Complex> img(d, d);
                    if (q == l) img += commutator(theta[k], e);
                    if (q == k) img += commutator(e, theta[l]);
                    Eigen::MatrixXcd ii = iso(img);
                    for (Eigen::Index x = 0; x < blk; ++x)
                        vmap(static_cast<Eigen::Index>(p) * blk + x, col) = ii(x / static_cast<Eigen::Index>(d), x % static_cast<Eigen::Index>(d));
                }
            }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vmap, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    double cut = 1e-10 * std::max(1.0, s.size() ? s(0) : 0.0);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > cut) ++r;
    if (r == 0) return 0.0;
    Eigen::MatrixXcd u = svd.matrixU().leftCols(r);
    return (u.adjoint() * kvec).norm();
}

/// Per cohomology degree, the residual of theta^i(lambda) against the Yang-Mills condition.
template <class S>
std::map<int, double> is_yang_mills_per_degree(const YMInstance<S>& inst, const std::vector<Complex>& lambda,
                                               double tol = kDefaultFloatTolerance) {
    auto pieces = induced_pieces(inst, tol);
    std::vector<S> lam;
    for (const auto& z : lambda) lam.push_back(ScalarTraits<S>::from_complex(z));
    auto theta = theta_at(inst, pieces, lam);
    std::map<int, double> out;
    for (const auto& [i, t] : theta) {
        std::vector<Matrix<Complex>> tc;
        for (const auto& m : t) tc.push_back(convert<Complex>(m));
        out[i] = per_degree_residual(tc, convert<Complex>(inst.metrics.at(i)));
    }
    return out;
}

/// The cocycle H tau (H^*H)^{-1} H^* on F^j, zero elsewhere: induces tau on H^j and nothing else.
template <class S>
VariationClass<S> extend_variation(const ConstantComplex<S>& f, const CohomologySplitting<S>& split,
                                   const std::vector<Matrix<S>>& tau, int j) {
    const Matrix<S> h = split.h(j);
    if (h.cols() > 0 && h.rows() != f.dim(j)) throw std::invalid_argument("extend_variation: splitting does not match F");
    for (const auto& t : tau)
        if (t.rows() != h.cols() || t.cols() != h.cols())
            throw std::invalid_argument("extend_variation: tau does not act on H^" + std::to_string(j));
    VariationClass<S> v;
    v.canonical = false;
    v.element.degree = 0;
    v.element.nblocks = tau.size();
    if (h.cols() == 0) return v;
    Matrix<S> left = la::inverse(Matrix<S>(h.adjoint() * h)) * h.adjoint();
    std::vector<Matrix<S>> mats;
    for (const auto& t : tau) mats.push_back(h * t * left);
    v.element.components[j] = std::move(mats);
    return v;
}

}  // namespace brane_gauge::ym
