#pragma once

// Twisted complexes on P^n: G^p = sum_i O(k_pi), differentials are matrices of
// homogeneous forms in x_0..x_n. Everything here runs on the exact backend.

#include "brane_gauge/algebra/hom_complex.hpp"
#include "brane_gauge/algebra/linalg.hpp"
#include "brane_gauge/algebra/polynomial.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace brane_gauge::projective {

using Form = Polynomial<GaussRational>;

inline long binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Monomials of total degree d in n+1 variables, lexicographically descending.
inline std::vector<Exponent> monomials(int n, int d) {
    std::vector<Exponent> out;
    if (d < 0 || n < 0) return out;
    Exponent e(static_cast<std::size_t>(n) + 1, 0);
    auto rec = [&](auto&& self, std::size_t var, int left) -> void {
        if (var == e.size() - 1) {
            e[var] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[var] = k;
            self(self, var + 1, left - k);
        }
        e[var] = 0;
    };
    rec(rec, 0, d);
    return out;
}

/// Degree-d forms on P^n, i.e. Hom(O(a), O(a + d)).
struct GradedPiece {
    int n = 0;
    int d = 0;
    std::vector<Exponent> basis;
    std::map<Exponent, std::size_t> index;

    GradedPiece() = default;
    GradedPiece(int n_, int d_) : n(n_), d(d_), basis(monomials(n_, d_)) {
        for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    }
    [[nodiscard]] std::size_t size() const { return basis.size(); }

    [[nodiscard]] std::vector<GaussRational> coordinates(const Form& f) const {
        std::vector<GaussRational> v(basis.size());
        for (const auto& [e, c] : f.terms()) {
            auto it = index.find(e);
            if (it == index.end()) throw std::invalid_argument("GradedPiece: form is not homogeneous of degree " + std::to_string(d));
            v[it->second] = c;
        }
        return v;
    }
    [[nodiscard]] Form form(const std::vector<GaussRational>& v) const {
        Form f(static_cast<std::size_t>(n) + 1);
        for (std::size_t i = 0; i < basis.size(); ++i) f.add_term(basis[i], v[i]);
        return f;
    }
};

/// Dense matrix of forms; entry (j, i) maps summand i of the source to summand j of the target.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
        : rows_(rows), cols_(cols), nvars_(nvars), e_(rows * cols, Form(nvars)) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    Form& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Form& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    [[nodiscard]] bool is_zero() const {
        for (const auto& f : e_)
            if (!f.is_zero()) return false;
        return true;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("PolyMatrix product: inner dimension mismatch");
        PolyMatrix c(a.rows_, b.cols_, a.nvars_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }
    friend PolyMatrix operator-(const PolyMatrix& a) {
        PolyMatrix c = a;
        for (auto& f : c.e_) f = -f;
        return c;
    }
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t nvars_ = 0;
    std::vector<Form> e_;
};

struct TwistedComplex {
    int n = 1;
    std::map<int, std::vector<int>> terms;      // degree -> twists
    std::map<int, PolyMatrix> differentials;    // p -> matrix G^p -> G^{p+1}

    [[nodiscard]] std::size_t nvars() const { return static_cast<std::size_t>(n) + 1; }
    [[nodiscard]] const std::vector<int>& twists(int p) const {
        static const std::vector<int> none;
        auto it = terms.find(p);
        return it == terms.end() ? none : it->second;
    }
    [[nodiscard]] std::size_t size(int p) const { return twists(p).size(); }
    [[nodiscard]] PolyMatrix d(int p) const {
        auto it = differentials.find(p);
        if (it != differentials.end()) return it->second;
        return PolyMatrix(size(p + 1), size(p), nvars());
    }
    [[nodiscard]] bool empty() const {
        for (const auto& [p, t] : terms)
            if (!t.empty()) return false;
        return true;
    }
    [[nodiscard]] std::size_t total_terms() const {
        std::size_t s = 0;
        for (const auto& [p, t] : terms) s += t.size();
        return s;
    }
    /// Drops empty degrees and zero differentials so equal complexes compare equal.
    [[nodiscard]] TwistedComplex normalized() const {
        TwistedComplex c;
        c.n = n;
        for (const auto& [p, t] : terms)
            if (!t.empty()) c.terms[p] = t;
        for (const auto& [p, m] : differentials)
            if (!m.is_zero() && c.size(p) > 0 && c.size(p + 1) > 0) c.differentials[p] = m;
        return c;
    }
    friend bool operator==(const TwistedComplex& a, const TwistedComplex& b) {
        auto x = a.normalized(), y = b.normalized();
        return x.n == y.n && x.terms == y.terms && x.differentials == y.differentials;
    }

    /// Builder helpers.
    void add_term(int p, int twist) { terms[p].push_back(twist); }
    void set_entry(int p, std::size_t j, std::size_t i, const Form& f) {
        auto it = differentials.find(p);
        if (it == differentials.end()) it = differentials.emplace(p, PolyMatrix(size(p + 1), size(p), nvars())).first;
        it->second(j, i) = f;
    }
};

/// Linear form x_i on P^n, or a constant.
inline Form variable(int n, int i) { return Form::variable(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(i), GaussRational(1)); }
inline Form constant(int n, const GaussRational& c) { return Form::constant(static_cast<std::size_t>(n) + 1, c); }

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
};

inline ValidationReport validate(const TwistedComplex& c) {
    ValidationReport r;
    auto fail = [&](std::string s) {
        r.valid = false;
        r.violations.push_back(std::move(s));
    };
    if (c.n < 1) fail("projective dimension n must be at least 1");
    for (const auto& [p, t] : c.terms)
        for (int k : t)
            if (k < -c.n || k > 0)
                r.warnings.push_back("twist " + std::to_string(k) + " at degree " + std::to_string(p) +
                                     " lies outside [-n, 0]");
    for (const auto& [p, m] : c.differentials) {
        const std::string at = "differential " + std::to_string(p);
        if (m.rows() != c.size(p + 1) || m.cols() != c.size(p)) {
            fail(at + ": shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " does not match terms " +
                 std::to_string(c.size(p + 1)) + "x" + std::to_string(c.size(p)));
            continue;
        }
        if (m.nvars() != c.nvars()) {
            fail(at + ": forms must be in n+1 variables");
            continue;
        }
        for (std::size_t j = 0; j < m.rows(); ++j)
            for (std::size_t i = 0; i < m.cols(); ++i) {
                const Form& f = m(j, i);
                if (f.nvars() != c.nvars()) {
                    fail(at + " entry (" + std::to_string(j) + "," + std::to_string(i) + "): wrong variable count");
                    continue;
                }
                int deg = c.twists(p + 1)[j] - c.twists(p)[i];
                if (f.is_zero()) continue;
                if (deg < 0)
                    fail(at + " entry (" + std::to_string(j) + "," + std::to_string(i) + ") must vanish: degree " +
                         std::to_string(deg) + " is negative");
                else if (!f.is_homogeneous(deg))
                    fail(at + " entry (" + std::to_string(j) + "," + std::to_string(i) +
                         ") is not homogeneous of degree " + std::to_string(deg));
            }
    }
    if (!r.valid) return r;
    for (const auto& [p, m] : c.differentials) {
        auto next = c.differentials.find(p + 1);
        if (next == c.differentials.end()) continue;
        if (!(next->second * m).is_zero())
            fail("d^" + std::to_string(p + 1) + " d^" + std::to_string(p) + " is not zero");
    }
    return r;
}

inline void require_valid(const TwistedComplex& c) {
    auto r = validate(c);
    if (!r.valid) throw std::invalid_argument("invalid twisted complex: " + r.violations.front());
}

// ---------------------------------------------------------------------------
// Sections of Omega^1(k) via the Euler sequence 0 -> Omega^1(k) -> O(k-1)^{n+1} -> O(k)
// ---------------------------------------------------------------------------

/// Matrix of (f_0..f_n) -> sum x_i f_i from (degree k-1)^{n+1} to degree k.
inline Matrix<GaussRational> euler_map(int n, int k) {
    GradedPiece src(n, k - 1), dst(n, k);
    const std::size_t comps = static_cast<std::size_t>(n) + 1;
    Matrix<GaussRational> m(dst.size(), comps * src.size());
    for (std::size_t c = 0; c < comps; ++c)
        for (std::size_t s = 0; s < src.size(); ++s) {
            Exponent e = src.basis[s];
            e[c] += 1;
            m(dst.index.at(e), c * src.size() + s) = GaussRational(1);
        }
    return m;
}

struct OmegaSections {
    int n = 0;
    int k = 0;
    std::vector<std::vector<Form>> basis;  // (n+1)-tuples of degree k-1 forms
    Matrix<GaussRational> coordinates;     // columns: basis in (degree k-1)^{n+1} coordinates
};

inline OmegaSections omega1_sections(int n, int k) {
    OmegaSections s;
    s.n = n;
    s.k = k;
    GradedPiece src(n, k - 1);
    const std::size_t comps = static_cast<std::size_t>(n) + 1;
    if (src.size() == 0) {
        s.coordinates = Matrix<GaussRational>(0, 0);
        return s;
    }
    s.coordinates = la::kernel_basis(euler_map(n, k));
    for (std::size_t b = 0; b < s.coordinates.cols(); ++b) {
        std::vector<Form> tuple;
        for (std::size_t c = 0; c < comps; ++c) {
            std::vector<GaussRational> v(src.size());
            for (std::size_t t = 0; t < src.size(); ++t) v[t] = s.coordinates(c * src.size() + t, b);
            tuple.push_back(src.form(v));
        }
        s.basis.push_back(std::move(tuple));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Minimization
// ---------------------------------------------------------------------------

struct EliminationStep {
    int degree = 0;             // pivot maps G^degree -> G^{degree+1}
    std::size_t source = 0;     // index i in G^degree
    std::size_t target = 0;     // index j in G^{degree+1}
    int twist = 0;
    GaussRational pivot;
};

struct MinimizeResult {
    TwistedComplex complex;
    std::vector<EliminationStep> steps;
};

namespace detail {

inline std::optional<GaussRational> constant_value(const Form& f) {
    if (f.is_zero() || f.total_degree() != 0) return std::nullopt;
    return f.terms().begin()->second;
}

inline PolyMatrix drop(const PolyMatrix& m, std::optional<std::size_t> row, std::optional<std::size_t> col) {
    std::size_t nr = m.rows() - (row ? 1 : 0), nc = m.cols() - (col ? 1 : 0);
    PolyMatrix out(nr, nc, m.nvars());
    for (std::size_t r = 0, rr = 0; r < m.rows(); ++r) {
        if (row && r == *row) continue;
        for (std::size_t c = 0, cc = 0; c < m.cols(); ++c) {
            if (col && c == *col) continue;
            out(rr, cc) = m(r, c);
            ++cc;
        }
        ++rr;
    }
    return out;
}

}  // namespace detail

/// Removes contractible summands O(k) -c-> O(k) by Gaussian elimination until none remain.
inline MinimizeResult minimize(const TwistedComplex& input) {
    require_valid(input);
    MinimizeResult res;
    TwistedComplex c = input.normalized();
    for (;;) {
        std::optional<EliminationStep> step;
        for (const auto& [p, m] : c.differentials) {
            for (std::size_t j = 0; j < m.rows() && !step; ++j)
                for (std::size_t i = 0; i < m.cols() && !step; ++i) {
                    if (c.twists(p + 1)[j] != c.twists(p)[i]) continue;
                    if (auto v = detail::constant_value(m(j, i)))
                        step = EliminationStep{p, i, j, c.twists(p)[i], *v};
                }
            if (step) break;
        }
        if (!step) break;
        const int p = step->degree;
        const std::size_t i = step->source, j = step->target;
        const PolyMatrix d = c.d(p);
        const Form inv = constant(c.n, GaussRational(1) / step->pivot);
        PolyMatrix nd = detail::drop(d, j, i);
        for (std::size_t r = 0, rr = 0; r < d.rows(); ++r) {
            if (r == j) continue;
            for (std::size_t s = 0, ss = 0; s < d.cols(); ++s) {
                if (s == i) continue;
                if (!d(r, i).is_zero() && !d(j, s).is_zero()) nd(rr, ss) -= d(r, i) * inv * d(j, s);
                ++ss;
            }
            ++rr;
        }
        std::optional<PolyMatrix> prev, next;
        if (c.size(p - 1) > 0) prev = detail::drop(c.d(p - 1), i, std::nullopt);
        if (c.size(p + 2) > 0) next = detail::drop(c.d(p + 1), std::nullopt, j);
        c.terms[p].erase(c.terms[p].begin() + static_cast<std::ptrdiff_t>(i));
        c.terms[p + 1].erase(c.terms[p + 1].begin() + static_cast<std::ptrdiff_t>(j));
        c.differentials[p] = nd;
        if (prev) c.differentials[p - 1] = *prev;
        if (next) c.differentials[p + 1] = *next;
        c = c.normalized();
        res.steps.push_back(*step);
    }
    res.complex = std::move(c);
    return res;
}

// ---------------------------------------------------------------------------
// Existence of a holomorphic gauge field
// ---------------------------------------------------------------------------

struct GaugeDecision {
    bool exists = false;
    TwistedComplex minimized;
    std::vector<EliminationStep> steps;
    std::optional<std::pair<int, int>> offending;  // (degree, twist) of a nonzero twist
    /// Connection data of the canonical field, one zero matrix per degree (componentwise d).
    std::map<int, Matrix<GaussRational>> canonical_field;
};

inline GaugeDecision gauge_field_exists(const TwistedComplex& c) {
    auto m = minimize(c);
    GaugeDecision g;
    g.minimized = m.complex;
    g.steps = std::move(m.steps);
    g.exists = true;
    for (const auto& [p, t] : g.minimized.terms)
        for (int k : t)
            if (k != 0 && !g.offending) {
                g.exists = false;
                g.offending = std::make_pair(p, k);
            }
    if (g.exists)
        for (const auto& [p, t] : g.minimized.terms) g.canonical_field[p] = Matrix<GaussRational>(t.size(), t.size());
    return g;
}

// ---------------------------------------------------------------------------
// Gauge space: H^0 Hom(C, Omega^1(C))
// ---------------------------------------------------------------------------

/// Ambient coordinates of Hom^m(C, O(-1)^{n+1} (x) C) inside which Hom^m(C, Omega^1(C)) sits.
/// A coordinate is (p, j, i, component, monomial) for the block G^p_i -> G^{p+m}_j.
class OmegaHomSpace {
public:
    using Key = std::tuple<int, std::size_t, std::size_t, std::size_t, Exponent>;

    OmegaHomSpace(const TwistedComplex& c, int m) : m_(m) {
        const std::size_t comps = c.nvars();
        for (const auto& [p, src] : c.terms) {
            const auto& dst = c.twists(p + m);
            for (std::size_t j = 0; j < dst.size(); ++j)
                for (std::size_t i = 0; i < src.size(); ++i) {
                    int k = dst[j] - src[i];
                    Block b{p, j, i, k, offset_};
                    GradedPiece piece(c.n, k - 1);
                    for (std::size_t comp = 0; comp < comps; ++comp)
                        for (const auto& e : piece.basis) index_[Key{p, j, i, comp, e}] = offset_++;
                    blocks_.push_back(b);
                }
        }
    }

    struct Block {
        int p;
        std::size_t j, i;
        int k;            // twist difference
        std::size_t offset;
    };

    [[nodiscard]] std::size_t dimension() const { return offset_; }
    [[nodiscard]] const std::vector<Block>& blocks() const { return blocks_; }
    [[nodiscard]] const std::map<Key, std::size_t>& index() const { return index_; }
    [[nodiscard]] int degree() const { return m_; }

private:
    int m_ = 0;
    std::size_t offset_ = 0;
    std::vector<Block> blocks_;
    std::map<Key, std::size_t> index_;
};

/// delta on the ambient space: (delta g)^p = d^{p+m} g^p + (-1)^{m+1} g^{p+1} d^p, componentwise.
inline Matrix<GaussRational> omega_hom_differential(const TwistedComplex& c, int m) {
    OmegaHomSpace src(c, m), dst(c, m + 1);
    Matrix<GaussRational> out(dst.dimension(), src.dimension());
    const GaussRational sign((m + 1) % 2 == 0 ? 1 : -1);
    for (const auto& [key, col] : src.index()) {
        const auto& [p, j, i, comp, e] = key;
        Form g = Form::monomial(e, GaussRational(1));
        auto add = [&](int pp, std::size_t jj, std::size_t ii, const Form& f, const GaussRational& s) {
            for (const auto& [fe, fc] : f.terms()) {
                auto it = dst.index().find(OmegaHomSpace::Key{pp, jj, ii, comp, fe});
                if (it == dst.index().end())
                    throw std::logic_error("omega_hom_differential: image leaves the ambient space");
                out(it->second, col) += s * fc;
            }
        };
        // d^{p+m} g^p lands in block (p, j', i)
        PolyMatrix dn = c.d(p + m);
        for (std::size_t jj = 0; jj < dn.rows(); ++jj)
            if (!dn(jj, j).is_zero()) add(p, jj, i, dn(jj, j) * g, GaussRational(1));
        // sign * g^p d^{p-1} lands in block (p-1, j, i')
        PolyMatrix dp = c.d(p - 1);
        for (std::size_t ii = 0; ii < dp.cols(); ++ii)
            if (!dp(i, ii).is_zero()) add(p - 1, j, ii, g * dp(i, ii), sign);
    }
    return out;
}

/// Block-diagonal Euler constraint on the ambient space; its kernel is Hom^m(C, Omega^1(C)).
inline Matrix<GaussRational> omega_hom_euler(const TwistedComplex& c, int m) {
    OmegaHomSpace s(c, m);
    std::size_t rows = 0;
    for (const auto& b : s.blocks()) rows += GradedPiece(c.n, b.k).size();
    Matrix<GaussRational> out(rows, s.dimension());
    std::size_t r0 = 0;
    for (const auto& b : s.blocks()) {
        auto e = euler_map(c.n, b.k);
        if (e.cols() > 0) out.set_block(r0, b.offset, e);
        r0 += e.rows();
    }
    return out;
}

/// Columns: basis of Hom^m(C, Omega^1(C)) in ambient coordinates (blockwise Euler kernels).
inline Matrix<GaussRational> omega_hom_subspace(const TwistedComplex& c, int m) {
    OmegaHomSpace s(c, m);
    std::vector<std::vector<GaussRational>> cols;
    for (const auto& b : s.blocks()) {
        auto sec = omega1_sections(c.n, b.k);
        for (std::size_t q = 0; q < sec.coordinates.cols(); ++q) {
            std::vector<GaussRational> v(s.dimension());
            for (std::size_t t = 0; t < sec.coordinates.rows(); ++t) v[b.offset + t] = sec.coordinates(t, q);
            cols.push_back(std::move(v));
        }
    }
    return columns_to_matrix(s.dimension(), cols);
}

struct GaugeSpaceReport {
    std::size_t dimension = 0;
    std::size_t cochain_dimension = 0;    // dim Hom^0(C, Omega^1(C))
    std::size_t cocycle_dimension = 0;
    std::size_t coboundary_dimension = 0;
    int max_twist_difference = 0;
};

inline GaugeSpaceReport gauge_space_dimension(const TwistedComplex& input) {
    require_valid(input);
    TwistedComplex c = input.normalized();
    GaugeSpaceReport r;
    bool any = false;
    for (const auto& [p, src] : c.terms)
        for (const auto& [q, dst] : c.terms)
            for (int a : src)
                for (int b : dst) {
                    r.max_twist_difference = any ? std::max(r.max_twist_difference, b - a) : b - a;
                    any = true;
                }
    Matrix<GaussRational> e0 = omega_hom_subspace(c, 0);
    Matrix<GaussRational> em = omega_hom_subspace(c, -1);
    r.cochain_dimension = e0.cols();
    std::size_t rk0 = e0.cols() == 0 ? 0 : la::rank(omega_hom_differential(c, 0) * e0);
    std::size_t rkm = em.cols() == 0 ? 0 : la::rank(omega_hom_differential(c, -1) * em);
    r.cocycle_dimension = r.cochain_dimension - rk0;
    r.coboundary_dimension = rkm;
    r.dimension = r.cocycle_dimension - r.coboundary_dimension;
    return r;
}

// ---------------------------------------------------------------------------
// Shift, direct sum, cone
// ---------------------------------------------------------------------------

/// C[l]^p = C^{p+l}, differentials multiplied by (-1)^l.
inline TwistedComplex shift(const TwistedComplex& c, int l) {
    TwistedComplex s;
    s.n = c.n;
    for (const auto& [p, t] : c.terms) s.terms[p - l] = t;
    for (const auto& [p, m] : c.differentials) s.differentials[p - l] = (l % 2 == 0) ? m : -m;
    return s;
}

inline PolyMatrix block_diagonal(const PolyMatrix& a, const PolyMatrix& b, std::size_t nvars) {
    PolyMatrix m(a.rows() + b.rows(), a.cols() + b.cols(), nvars);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
    return m;
}

inline TwistedComplex direct_sum(const TwistedComplex& a, const TwistedComplex& b) {
    if (a.n != b.n) throw std::invalid_argument("direct_sum: complexes live on different P^n");
    TwistedComplex s;
    s.n = a.n;
    std::set<int> degs;
    for (const auto& [p, t] : a.terms) degs.insert(p);
    for (const auto& [p, t] : b.terms) degs.insert(p);
    for (int p : degs) {
        auto t = a.twists(p);
        const auto& u = b.twists(p);
        t.insert(t.end(), u.begin(), u.end());
        if (!t.empty()) s.terms[p] = t;
    }
    for (int p : degs) {
        if (s.size(p) == 0 || s.size(p + 1) == 0) continue;
        auto m = block_diagonal(a.d(p), b.d(p), s.nvars());
        if (!m.is_zero()) s.differentials[p] = m;
    }
    return s;
}

/// Chain map h: A -> B, components h^p: A^p -> B^p as form matrices.
struct ChainMap {
    TwistedComplex source;
    TwistedComplex target;
    std::map<int, PolyMatrix> components;

    [[nodiscard]] PolyMatrix at(int p) const {
        auto it = components.find(p);
        if (it != components.end()) return it->second;
        return PolyMatrix(target.size(p), source.size(p), source.nvars());
    }
};

inline std::vector<std::string> chain_map_violations(const ChainMap& h) {
    std::vector<std::string> v;
    if (h.source.n != h.target.n) return {"source and target live on different P^n"};
    for (const auto& s : validate(h.source).violations) v.push_back("source: " + s);
    for (const auto& s : validate(h.target).violations) v.push_back("target: " + s);
    if (!v.empty()) return v;
    for (const auto& [p, m] : h.components) {
        if (m.rows() != h.target.size(p) || m.cols() != h.source.size(p)) {
            v.push_back("component " + std::to_string(p) + " has the wrong shape");
            continue;
        }
        for (std::size_t j = 0; j < m.rows(); ++j)
            for (std::size_t i = 0; i < m.cols(); ++i) {
                int deg = h.target.twists(p)[j] - h.source.twists(p)[i];
                if (m(j, i).is_zero()) continue;
                if (deg < 0 || !m(j, i).is_homogeneous(deg))
                    v.push_back("component " + std::to_string(p) + " entry (" + std::to_string(j) + "," +
                                std::to_string(i) + ") has the wrong degree");
            }
    }
    if (!v.empty()) return v;
    std::set<int> degs;
    for (const auto& [p, t] : h.source.terms) degs.insert(p);
    for (int p : degs) {
        if (h.target.size(p + 1) == 0 || h.source.size(p) == 0) continue;
        PolyMatrix lhs = h.target.d(p) * h.at(p);
        PolyMatrix rhs = h.at(p + 1) * h.source.d(p);
        if (!(lhs == rhs)) v.push_back("h does not commute with the differentials at degree " + std::to_string(p));
    }
    return v;
}

/// Cone(h)^p = A^{p+1} + B^p, d = [[-d_A, 0], [h, d_B]].
inline TwistedComplex cone(const ChainMap& h) {
    auto v = chain_map_violations(h);
    if (!v.empty()) throw std::invalid_argument("cone: invalid chain map: " + v.front());
    const auto& a = h.source;
    const auto& b = h.target;
    TwistedComplex c;
    c.n = a.n;
    std::set<int> degs;
    for (const auto& [p, t] : a.terms) degs.insert(p - 1);
    for (const auto& [p, t] : b.terms) degs.insert(p);
    for (int p : degs) {
        auto t = a.twists(p + 1);
        const auto& u = b.twists(p);
        t.insert(t.end(), u.begin(), u.end());
        if (!t.empty()) c.terms[p] = t;
    }
    for (int p : degs) {
        if (c.size(p) == 0 || c.size(p + 1) == 0) continue;
        PolyMatrix m(c.size(p + 1), c.size(p), c.nvars());
        PolyMatrix da = a.d(p + 1), db = b.d(p), hp = h.at(p + 1);
        const std::size_t a0 = a.size(p + 1), a1 = a.size(p + 2);
        for (std::size_t r = 0; r < a1; ++r)
            for (std::size_t s = 0; s < a0; ++s) m(r, s) = -da(r, s);
        for (std::size_t r = 0; r < b.size(p + 1); ++r)
            for (std::size_t s = 0; s < a0; ++s) m(a1 + r, s) = hp(r, s);
        for (std::size_t r = 0; r < b.size(p + 1); ++r)
            for (std::size_t s = 0; s < b.size(p); ++s) m(a1 + r, a0 + s) = db(r, s);
        if (!m.is_zero()) c.differentials[p] = m;
    }
    return c;
}

/// Identity chain map on a complex.
inline ChainMap identity_map(const TwistedComplex& c) {
    ChainMap h{c, c, {}};
    for (const auto& [p, t] : c.terms) {
        PolyMatrix m(t.size(), t.size(), c.nvars());
        for (std::size_t i = 0; i < t.size(); ++i) m(i, i) = constant(c.n, GaussRational(1));
        h.components[p] = m;
    }
    return h;
}

}  // namespace brane_gauge::projective
