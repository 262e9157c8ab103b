#pragma once

// Yang-Mills instances shared by the unit tests and the acceptance run.

#include "generators.hpp"

#include "brane_gauge/yang_mills/ym.hpp"

namespace bg_test {

using namespace brane_gauge::ym;

template <class S>
inline ConstantComplex<S> single(std::size_t r) {
    ConstantComplex<S> f;
    f.set_dim(0, r);
    return f;
}

template <class S>
VariationClass<S> variation_at(int p, std::vector<Matrix<S>> mats) {
    VariationClass<S> v;
    v.element.degree = 0;
    v.element.nblocks = mats.size();
    v.element.components[p] = std::move(mats);
    return v;
}

/// O^2, g = 2, base 0, one variation lambda (E_12, E_21): P = 2 |lambda|^4.
template <class S>
YMInstance<S> commutator_slice() {
    auto f = single<S>(2);
    Matrix<S> e12(2, 2), e21(2, 2);
    e12(0, 1) = ScalarTraits<S>::one();
    e21(1, 0) = ScalarTraits<S>::one();
    return make_instance(f, ConnectionFamily<S>::zero(f, 2), {variation_at<S>(0, {e12, e21})});
}

/// Random compatible torus instance with the full gauge space as parameters, m in [lo, hi].
inline YMInstance<Complex> full_instance(Rng& rng, std::size_t g, std::size_t lo, std::size_t hi) {
    for (;;) {
        auto t = rand_torus<Complex>(rng, rand_int(rng, 1, 3), 3, g);
        auto gs = torus::gauge_space_basis(t.f, g);
        if (gs.dimension() < lo || gs.dimension() > hi) continue;
        return make_instance(t.f, t.conn, gs.basis);
    }
}

/// Random instance with m random combinations of gauge-space directions.
inline YMInstance<Complex> sub_instance(Rng& rng, std::size_t g, std::size_t m, std::size_t min_full = 2) {
    for (;;) {
        auto t = rand_torus<Complex>(rng, rand_int(rng, 1, 3), 3, g);
        auto gs = torus::gauge_space_basis(t.f, g);
        if (gs.dimension() < std::max(m, min_full) || gs.dimension() > 40) continue;
        std::vector<VariationClass<Complex>> basis;
        for (std::size_t a = 0; a < m; ++a) {
            VariationClass<Complex> v;
            v.element.degree = 0;
            v.element.nblocks = g;
            for (const auto& [i, r] : t.f.dims()) v.element.components[i] = std::vector<Matrix<Complex>>(g, Matrix<Complex>(r, r));
            for (const auto& b : gs.basis) {
                Complex c = rand_scalar<Complex>(rng, 1);
                for (auto& [i, mats] : v.element.components)
                    for (std::size_t k = 0; k < g; ++k) mats[k] += c * b.at(i, k, t.f);
            }
            basis.push_back(std::move(v));
        }
        return make_instance(t.f, t.conn, basis);
    }
}

inline std::vector<Complex> to_lambda(const std::vector<double>& x) {
    std::vector<Complex> l;
    for (std::size_t a = 0; 2 * a + 1 < x.size(); ++a) l.emplace_back(x[2 * a], x[2 * a + 1]);
    return l;
}

inline std::vector<double> rand_point(Rng& rng, std::size_t n, double box) {
    std::vector<double> x(n);
    for (auto& v : x) v = rand_real(rng, -box, box);
    return x;
}

/// Curvature norms computed from scratch: shift the connection on F, then induce.
inline std::map<int, double> direct_norms(const YMInstance<Complex>& inst, const std::vector<Complex>& lambda) {
    auto c = torus::shifted_connection(inst.f, inst.base, inst.basis, lambda);
    auto th = torus::induced_connection(inst.f, c, inst.split);
    std::map<int, double> out;
    for (const auto& [i, t] : th) out[i] = torus::curvature_norm(torus::curvature(t), inst.metrics.at(i)).real();
    return out;
}

inline double gradient_max(const YMPolynomialSet<RealPoly>& p, const std::vector<double>& x) {
    double g = 0.0;
    for (const auto& e : stationarity_system(p, Mode::total)) g = std::max(g, std::abs(e.evaluate(x)));
    return g;
}

}  // namespace bg_test
