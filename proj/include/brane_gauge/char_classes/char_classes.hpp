#pragma once

// Characteristic-class bookkeeping for the Euler characteristics of flat bundles:
// the truncated ring Q[h]/h^{n+1} for P^n, zero positive-degree data for the torus,
// and a finite Koszul-type complex computing chi on the torus directly.

#include "brane_gauge/algebra/hom_complex.hpp"
#include "brane_gauge/algebra/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace brane_gauge::chars {

/// Element of Q[h]/h^{n+1}; c[d] is the coefficient of h^d.
struct Class {
    int n = 0;
    std::vector<Rational> c;

    explicit Class(int dim = 0) : n(dim), c(static_cast<std::size_t>(dim) + 1, Rational(0)) {
        if (dim < 0) throw std::invalid_argument("Class: negative dimension");
    }
    static Class constant(int dim, const Rational& v) {
        Class x(dim);
        x.c[0] = v;
        return x;
    }
    /// a * h
    static Class hyperplane(int dim, const Rational& a = Rational(1)) {
        Class x(dim);
        if (dim >= 1) x.c[1] = a;
        return x;
    }

    /// Pairing with the fundamental class: the h^n coefficient (int h^n = 1).
    [[nodiscard]] Rational top() const { return c.back(); }
    /// Degree-d part, paired with [P^n] (zero unless d = n).
    [[nodiscard]] Rational pair_degree(int d) const { return d == n ? c[static_cast<std::size_t>(d)] : Rational(0); }

    friend Class operator+(Class a, const Class& b) {
        a.require(b);
        for (std::size_t i = 0; i < a.c.size(); ++i) a.c[i] += b.c[i];
        return a;
    }
    friend Class operator*(const Class& a, const Class& b) {
        a.require(b);
        Class p(a.n);
        for (int i = 0; i <= a.n; ++i)
            for (int j = 0; i + j <= a.n; ++j) p.c[static_cast<std::size_t>(i + j)] += a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
        return p;
    }
    friend Class operator*(const Rational& s, Class a) {
        for (auto& v : a.c) v *= s;
        return a;
    }
    friend bool operator==(const Class& a, const Class& b) { return a.n == b.n && a.c == b.c; }

    void require(const Class& o) const {
        if (o.n != n) throw std::invalid_argument("Class: ring dimension mismatch");
    }
};

inline Class power(const Class& x, int e) {
    Class r = Class::constant(x.n, Rational(1));
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

/// exp(x) for x with zero constant term.
inline Class exp_class(const Class& x) {
    if (x.c[0] != 0) throw std::invalid_argument("exp_class: constant term must vanish");
    Class r = Class::constant(x.n, Rational(1)), term = r;
    for (int k = 1; k <= x.n; ++k) {
        term = Rational(1, k) * (term * x);
        r = r + term;
    }
    return r;
}

/// Multiplicative inverse of a class with nonzero constant term.
inline Class inverse(const Class& x) {
    if (x.c[0] == 0) throw std::invalid_argument("inverse: class is not a unit");
    Class r(x.n);
    r.c[0] = Rational(1) / x.c[0];
    for (int d = 1; d <= x.n; ++d) {
        Rational s(0);
        for (int j = 1; j <= d; ++j) s += x.c[static_cast<std::size_t>(j)] * r.c[static_cast<std::size_t>(d - j)];
        r.c[static_cast<std::size_t>(d)] = -s / x.c[0];
    }
    return r;
}

/// x / (1 - e^{-x}) for a degree-1 class x = a h.
inline Class todd_root(const Class& x) {
    // (1 - e^{-x}) / x = sum_j (-1)^j x^j / (j+1)!
    Class q(x.n), xp = Class::constant(x.n, Rational(1));
    Rational fact(1);
    for (int j = 0; j <= x.n; ++j) {
        fact *= Rational(j + 1);
        q = q + (Rational(j % 2 == 0 ? 1 : -1) / fact) * xp;
        xp = xp * x;
    }
    return inverse(q);
}

/// ch(O(a)) = e^{a h}.
inline Class chern_character_line(int n, int a) { return exp_class(Class::hyperplane(n, Rational(a))); }

/// c(T P^n) = (1 + h)^{n+1} from the Euler sequence.
inline Class total_chern_tangent(int n) { return power(Class::constant(n, Rational(1)) + Class::hyperplane(n), n + 1); }

/// td(T P^n) = (h / (1 - e^{-h}))^{n+1}.
inline Class todd_tangent(int n) { return power(todd_root(Class::hyperplane(n)), n + 1); }

/// Conjugate complex structure: Chern roots change sign, td(T conj) = td(T)(-h).
inline Class todd_conjugate(int n) { return power(todd_root(Class::hyperplane(n, Rational(-1))), n + 1); }

enum class ModelKind { projective, torus };

struct Model {
    ModelKind kind = ModelKind::projective;
    int dim = 1;  // n for P^n, g for the torus
    static Model projective(int n) { return {ModelKind::projective, n}; }
    static Model torus(int g) { return {ModelKind::torus, g}; }
};

/// e(Y)[Y]: c_n(T)[P^n] = n + 1; zero on the torus (trivial tangent bundle, g >= 1).
inline Rational euler_number(const Model& m) {
    if (m.kind == ModelKind::torus) return Rational(0);
    return total_chern_tangent(m.dim).top();
}

/// Top pairing of the Todd class of the conjugate manifold; 0 on the torus (td = 1, g >= 1).
inline Rational todd_conjugate_number(const Model& m) {
    if (m.kind == ModelKind::torus) return Rational(0);
    return todd_conjugate(m.dim).top();
}

struct ChiPrediction {
    Rational chi_omega;  // r e(Y)
    Rational chi_a0;     // (-1)^n r td_C(Y conj)
};

inline ChiPrediction predict_chi(const Model& m, int r) {
    if (r < 1) throw std::invalid_argument("predict_chi: rank must be at least 1");
    if (m.dim < 1) throw std::invalid_argument("predict_chi: dimension must be at least 1");
    ChiPrediction p;
    p.chi_omega = Rational(r) * euler_number(m);
    Rational sign(m.dim % 2 == 0 ? 1 : -1);
    p.chi_a0 = sign * Rational(r) * todd_conjugate_number(m);
    return p;
}

// ---------------------------------------------------------------------------
// Torus: Lambda^p (C^g)^* (x) C^r with omega -> sum_k A_k dz_k ^ omega
// ---------------------------------------------------------------------------

/// Increasing index subsets of {0..g-1} of size p, lexicographic.
inline std::vector<std::vector<int>> subsets(int g, int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == p) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < g; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

template <class S>
ChainComplex<S> twisted_de_rham(const std::vector<Matrix<S>>& a, std::size_t r) {
    const int g = static_cast<int>(a.size());
    ChainComplex<S> c;
    std::vector<std::vector<std::vector<int>>> basis;
    for (int p = 0; p <= g; ++p) {
        basis.push_back(subsets(g, p));
        c.set_dim(p, basis.back().size() * r);
    }
    for (int p = 0; p < g; ++p) {
        const auto& src = basis[static_cast<std::size_t>(p)];
        const auto& dst = basis[static_cast<std::size_t>(p + 1)];
        Matrix<S> d(dst.size() * r, src.size() * r);
        for (std::size_t col = 0; col < src.size(); ++col)
            for (int k = 0; k < g; ++k) {
                const auto& i = src[col];
                if (std::find(i.begin(), i.end(), k) != i.end()) continue;
                // dz_k ^ dz_I = (-1)^{#{i in I : i < k}} dz_{I + k}
                int before = static_cast<int>(std::count_if(i.begin(), i.end(), [k](int x) { return x < k; }));
                std::vector<int> j = i;
                j.insert(j.begin() + before, k);
                std::size_t row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), j) - dst.begin());
                Matrix<S> blk = a[static_cast<std::size_t>(k)];
                if (before % 2 == 1) blk = ScalarTraits<S>::from_int(-1) * blk;
                d.set_block(row * r, col * r, blk);
            }
        c.set_differential(p, d);
    }
    return c;
}

template <class S>
struct TorusChi {
    long naive = 0;          // sum (-1)^p dim
    long cohomological = 0;  // sum (-1)^p dim H^p
    long prediction = 0;     // r e(T) = 0
    std::vector<std::size_t> cohomology_dims;
};

template <class S>
TorusChi<S> torus_chi_check(int g, std::size_t r, const std::vector<Matrix<S>>& a, double tol = kDefaultFloatTolerance) {
    if (g < 1) throw std::invalid_argument("torus_chi_check: g must be at least 1");
    if (a.size() != static_cast<std::size_t>(g)) throw std::invalid_argument("torus_chi_check: need g matrices");
    for (const auto& m : a)
        if (m.rows() != r || m.cols() != r) throw std::invalid_argument("torus_chi_check: matrices must be r x r");
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t l = k + 1; l < a.size(); ++l)
            if (!commutator(a[k], a[l]).is_zero(tol))
                throw std::invalid_argument("torus_chi_check: connection is not flat ([A_" + std::to_string(k) + ", A_" +
                                            std::to_string(l) + "] != 0)");
    auto c = twisted_de_rham(a, r);
    TorusChi<S> out;
    for (int p = 0; p <= g; ++p) {
        long sign = p % 2 == 0 ? 1 : -1;
        out.naive += sign * static_cast<long>(c.dim(p));
        auto h = cohomology(c, p, tol);
        out.cohomology_dims.push_back(h.dimension);
        out.cohomological += sign * static_cast<long>(h.dimension);
    }
    out.prediction = 0;  // e(T) = 0
    return out;
}

/// On P^n the two readings of chi for the trivial flat bundle O^r differ:
/// global sections give sum_p (-1)^p h^{p,0} r = r, the index gives r e(P^n) = r (n + 1).
struct ProjectiveDiscrepancy {
    int n = 0;
    int r = 0;
    Rational chi_global_sections;  // r * sum_p (-1)^p h^{p,0}(P^n)
    Rational chi_index;            // r e(P^n)
    Rational chi_a0_index;         // (-1)^n r td_C(P^n conj)
    bool agree = false;
};

inline ProjectiveDiscrepancy projective_discrepancy(int n, int r) {
    ProjectiveDiscrepancy d;
    d.n = n;
    d.r = r;
    // Hodge numbers of P^n: h^{p,q} = 1 iff p = q, so only h^{0,0} contributes
    Rational s(0);
    for (int p = 0; p <= n; ++p) s += Rational(p % 2 == 0 ? 1 : -1) * Rational(p == 0 ? 1 : 0);
    d.chi_global_sections = Rational(r) * s;
    auto pred = predict_chi(Model::projective(n), r);
    d.chi_index = pred.chi_omega;
    d.chi_a0_index = pred.chi_a0;
    d.agree = d.chi_global_sections == d.chi_index;
    return d;
}

}  // namespace brane_gauge::chars
