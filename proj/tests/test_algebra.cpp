#include "generators.hpp"

#include "brane_gauge/algebra/hom_complex.hpp"
#include "brane_gauge/algebra/linalg.hpp"
#include "brane_gauge/algebra/polynomial.hpp"

#include <catch_amalgamated.hpp>

using namespace brane_gauge;
using namespace bg_test;
using GR = GaussRational;

namespace {

// Row-major Kronecker product.
template <class S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
    Matrix<S> k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c) k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    return k;
}

// delta on Hom^m assembled from Kronecker blocks: vec(B g) = (B x I) vec g, vec(g A) = (I x A^T) vec g.
template <class S>
Matrix<S> kron_delta(const ChainComplex<S>& a, const ChainComplex<S>& b, int m) {
    auto src = hom_positions(a, b, m);
    auto dst = hom_positions(a, b, m + 1);
    std::map<int, std::size_t> src_off, dst_off;
    std::size_t n = 0, out = 0;
    for (int p : src) { src_off[p] = n; n += a.dim(p) * b.dim(p + m); }
    for (int p : dst) { dst_off[p] = out; out += a.dim(p) * b.dim(p + m + 1); }
    Matrix<S> d(out, n);
    S sign = ScalarTraits<S>::from_int((m + 1) % 2 == 0 ? 1 : -1);
    for (int p : dst) {
        if (src_off.count(p)) {
            auto blk = kron(b.d(p + m), Matrix<S>::identity(a.dim(p)));
            for (std::size_t i = 0; i < blk.rows(); ++i)
                for (std::size_t j = 0; j < blk.cols(); ++j) d(dst_off[p] + i, src_off[p] + j) += blk(i, j);
        }
        if (src_off.count(p + 1)) {
            auto blk = kron(Matrix<S>::identity(b.dim(p + m + 1)), a.d(p).transpose());
            for (std::size_t i = 0; i < blk.rows(); ++i)
                for (std::size_t j = 0; j < blk.cols(); ++j)
                    d(dst_off[p] + i, src_off[p + 1] + j) += sign * blk(i, j);
        }
    }
    return d;
}

ChainComplex<GR> single(std::size_t r) {
    ChainComplex<GR> c;
    c.set_dim(0, r);
    return c;
}

ChainComplex<GR> identity_pair(std::size_t r) {
    ChainComplex<GR> c;
    c.set_dim(0, r);
    c.set_dim(1, r);
    c.set_differential(0, Matrix<GR>::identity(r));
    return c;
}

}  // namespace

TEST_CASE("kernel basis examples") {
    auto k0 = la::kernel_basis(Matrix<GR>(1, 1));
    CHECK(k0.cols() == 1);
    auto k1 = la::kernel_basis(Matrix<GR>::identity(3));
    CHECK(k1.cols() == 0);
    Matrix<GR> m{{GR(1), GR(1)}};
    auto k2 = la::kernel_basis(m);
    REQUIRE(k2.cols() == 1);
    CHECK(k2(0, 0) == -k2(1, 0));
    CHECK(!k2(0, 0).is_zero());
}

TEST_CASE("rank nullity on random matrices, both backends") {
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = static_cast<std::size_t>(rand_int(rng, 1, 5));
        std::size_t c = static_cast<std::size_t>(rand_int(rng, 1, 5));
        std::size_t k = static_cast<std::size_t>(rand_int(rng, 0, 4));
        auto m = rand_low_rank<GR>(rng, r, c, k);
        auto ker = la::kernel_basis(m);
        auto img = la::image_basis(m);
        CHECK(ker.cols() + img.cols() == c);
        CHECK((m * ker).is_zero());
        auto mf = convert<Complex>(m);
        CHECK(la::rank(mf) == img.cols());
        auto kf = la::kernel_basis(mf);
        CHECK(kf.cols() == ker.cols());
        CHECK((mf * kf).max_abs() < 1e-9);
    }
}

TEST_CASE("ambiguous floating rank is refused") {
    Matrix<Complex> m{{Complex(1), Complex(0), Complex(0)},
                      {Complex(0), Complex(1e-9), Complex(0)},
                      {Complex(0), Complex(0), Complex(1e-11)}};
    CHECK_THROWS_AS(la::rank(m, 1e-10), la::NumericalRankError);
    Matrix<Complex> clean{{Complex(1), Complex(0)}, {Complex(0), Complex(1e-8)}};
    CHECK(la::rank(clean, 1e-10) == 2);
}

TEST_CASE("exact inverse and solve") {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        auto u = rand_unimodular<GR>(rng, 4);
        CHECK(u * la::inverse(u) == Matrix<GR>::identity(4));
    }
    Matrix<GR> m{{GR(1), GR(2)}, {GR(2), GR(4)}};
    CHECK(!la::solve(m, {GR(1), GR(1)}).has_value());
    auto x = la::solve(m, {GR(1), GR(2)});
    REQUIRE(x.has_value());
    CHECK(m * *x == std::vector<GR>{GR(1), GR(2)});
}

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("+7") == Rational(7));
    CHECK(format_rational(Rational(5, 10)) == "1/2");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("x"));
    CHECK(rational_from_double(0.375) == Rational(3, 8));
    CHECK(rational_from_double(-6.0) == Rational(-6));
}

TEST_CASE("hom differential trivial cases") {
    auto a = identity_pair(2);
    HomElement<GR> zero;
    zero.degree = 0;
    CHECK(hom_differential(zero, a, a).is_zero());

    ChainComplex<GR> flat;
    flat.set_dim(0, 2);
    flat.set_dim(1, 3);
    Rng rng(1);
    auto x = hom_from_vector(std::vector<GR>(hom_dimension(flat, flat, 0), GR(1)), flat, flat, 0);
    CHECK(hom_differential(x, flat, flat).is_zero());
}

TEST_CASE("hom differential rejects mismatched blocks") {
    auto a = identity_pair(2);
    HomElement<GR> x;
    x.degree = 0;
    x.components[0] = {Matrix<GR>(3, 2)};
    CHECK_THROWS_AS(hom_differential(x, a, a), std::invalid_argument);
}

TEST_CASE("delta squared vanishes on random exact complexes") {
    Rng rng(2024);
    for (int t = 0; t < 300; ++t) {
        auto a = rand_complex<GR>(rng, rand_int(rng, 1, 4), 4);
        auto b = rand_complex<GR>(rng, rand_int(rng, 1, 4), 4, rand_int(rng, -1, 1));
        int m = rand_int(rng, -2, 2);
        std::vector<GR> v(hom_dimension(a, b, m));
        for (auto& e : v) e = rand_scalar<GR>(rng);
        auto x = hom_from_vector(v, a, b, m);
        auto dd = hom_differential(hom_differential(x, a, b), a, b);
        CHECK(dd.is_zero(0.0));
    }
}

TEST_CASE("hom differential matrix agrees with Kronecker assembly") {
    Rng rng(99);
    for (int t = 0; t < 100; ++t) {
        auto a = rand_complex<GR>(rng, rand_int(rng, 1, 3), 3);
        auto b = rand_complex<GR>(rng, rand_int(rng, 1, 3), 3);
        int m = rand_int(rng, -1, 1);
        CHECK(hom_differential_matrix(a, b, m) == kron_delta(a, b, m));
    }
}

TEST_CASE("hom cohomology examples") {
    auto s = single(3);
    CHECK(hom_cohomology(s, s, 0).dimension == 9);

    // [V -1-> V]: cocycles (g0, g1) with g0 = g1, coboundaries (h, h); identity is null-homotopic.
    auto v = identity_pair(1);
    auto h = hom_cohomology(v, v, 0);
    CHECK(h.cocycle_dimension == 1);
    CHECK(h.coboundary_dimension == 1);
    CHECK(h.dimension == 0);
}

TEST_CASE("hom cohomology matches dense rank oracle") {
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        auto a = rand_complex<GR>(rng, rand_int(rng, 1, 4), 3);
        auto b = rand_complex<GR>(rng, rand_int(rng, 1, 4), 3, rand_int(rng, -1, 1));
        int m = rand_int(rng, -1, 1);
        auto n = hom_dimension(a, b, m);
        auto rk_out = la::rank(kron_delta(a, b, m));
        auto rk_in = la::rank(kron_delta(a, b, m - 1));
        auto h = hom_cohomology(a, b, m);
        CHECK(h.dimension == n - rk_out - rk_in);
        for (const auto& x : h.basis) CHECK(hom_differential(x, a, b).is_zero(0.0));
    }
}

TEST_CASE("hom cohomology is invariant under change of basis") {
    Rng rng(11);
    for (int t = 0; t < 60; ++t) {
        auto a = rand_complex<GR>(rng, rand_int(rng, 1, 3), 3);
        auto b = rand_complex<GR>(rng, rand_int(rng, 1, 3), 3);
        std::map<int, Matrix<GR>> pa, pb;
        for (const auto& [p, r] : a.dims()) pa[p] = rand_unimodular<GR>(rng, r);
        for (const auto& [p, r] : b.dims()) pb[p] = rand_unimodular<GR>(rng, r);
        auto h0 = hom_cohomology(a, b, 0).dimension;
        auto h1 = hom_cohomology(change_basis(a, pa), change_basis(b, pb), 0).dimension;
        CHECK(h0 == h1);
    }
}

TEST_CASE("float cohomology representatives are orthogonal to coboundaries") {
    Rng rng(12);
    for (int t = 0; t < 30; ++t) {
        auto c = rand_complex<Complex>(rng, 3, 4);
        for (int p = 0; p < 3; ++p) {
            auto r = cohomology(c, p);
            CHECK((c.d(p) * r.representatives).max_abs() < 1e-8);
            auto dprev = c.d(p - 1);
            if (dprev.cols() > 0 && r.representatives.cols() > 0)
                CHECK((dprev.adjoint() * r.representatives).max_abs() < 1e-8);
        }
    }
}

TEST_CASE("polynomial arithmetic and gradient examples") {
    RealPoly c = RealPoly::constant(2, 5.0);
    for (const auto& g : poly_wirtinger_gradient(c)) CHECK(g.is_zero());

    RealPoly x = RealPoly::variable(2, 0), y = RealPoly::variable(2, 1);
    RealPoly bowl = x * x + y * y;
    auto g = poly_wirtinger_gradient(bowl);
    CHECK(g[0] == 2.0 * x);
    CHECK(g[1] == 2.0 * y);
    CHECK(bowl.total_degree() == 2);
    CHECK((x - x).is_zero());
    CHECK(bowl.evaluate(std::vector<double>{1.0, 2.0}) == 5.0);
}

TEST_CASE("gradient matches central finite differences on random quartics") {
    Rng rng(77);
    for (int t = 0; t < 50; ++t) {
        std::size_t nv = static_cast<std::size_t>(rand_int(rng, 1, 4));
        RealPoly p(nv);
        for (int k = 0; k < 15; ++k) {
            Exponent e(nv, 0);
            int budget = rand_int(rng, 0, 4);
            for (int s = 0; s < budget; ++s) e[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(nv) - 1))]++;
            p.add_term(e, rand_real(rng, -2, 2));
        }
        auto grad = poly_wirtinger_gradient(p);
        std::vector<double> pt(nv);
        for (auto& v : pt) v = rand_real(rng, -1.5, 1.5);
        const double h = 1e-5;
        for (std::size_t v = 0; v < nv; ++v) {
            CHECK(grad[v].total_degree() <= std::max(p.total_degree() - 1, -1));
            auto up = pt, dn = pt;
            up[v] += h;
            dn[v] -= h;
            double fd = (p.evaluate(up) - p.evaluate(dn)) / (2 * h);
            double an = grad[v].evaluate(pt);
            CHECK(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(an)));
        }
    }
}

TEST_CASE("exact and floating polynomial evaluation agree") {
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        ExactRealPoly p(3);
        for (int k = 0; k < 10; ++k) {
            Exponent e{rand_int(rng, 0, 2), rand_int(rng, 0, 1), rand_int(rng, 0, 1)};
            p.add_term(e, Rational(rand_int(rng, -5, 5), rand_int(rng, 1, 4)));
        }
        std::vector<Rational> xq(3);
        std::vector<double> xd(3);
        for (int i = 0; i < 3; ++i) {
            xq[static_cast<std::size_t>(i)] = Rational(rand_int(rng, -40, 40), 4);
            xd[static_cast<std::size_t>(i)] = xq[static_cast<std::size_t>(i)].convert_to<double>();
        }
        double exact = p.evaluate(xq).convert_to<double>();
        CHECK(std::abs(exact - to_float(p).evaluate(xd)) <= 1e-9 * std::max(1.0, std::abs(exact)));
        CHECK(std::abs(exact - CompiledPoly(to_float(p)).evaluate(xd)) <= 1e-9 * std::max(1.0, std::abs(exact)));
    }
}
