#include "brane_gauge/cech/cech_line.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace brane_gauge;
using namespace brane_gauge::cech;

TEST_CASE("zeta cocycle examples") {
    CHECK(zeta_cocycle(CechLineBundle::with_default_metric(0)).is_zero());
    auto z1 = zeta_cocycle(CechLineBundle::with_default_metric(1));
    CHECK(z1.coeffs.size() == 1);
    CHECK(z1.coefficient(-1) == Rational(1));
    auto z3 = zeta_cocycle(CechLineBundle::with_default_metric(-3));
    CHECK(z3.coefficient(-1) == Rational(-3));
}

TEST_CASE("coboundary decision examples") {
    auto d0 = is_coboundary(zeta_cocycle(CechLineBundle::with_default_metric(0)));
    CHECK(d0.is_coboundary);
    CHECK(d0.beta0.empty());
    CHECK(d0.beta1.empty());

    auto d2 = is_coboundary(zeta_cocycle(CechLineBundle::with_default_metric(2)));
    CHECK(!d2.is_coboundary);
    CHECK(d2.obstruction == Rational(2));

    LaurentForm f;
    f.add(3, Rational(1, 2));
    f.add(0, Rational(-4));
    f.add(-2, Rational(5));
    f.add(-5, Rational(7, 3));
    auto w = is_coboundary(f);
    REQUIRE(w.is_coboundary);
    CHECK(coboundary_of(w.beta0, w.beta1) == f);
    for (const auto& [n, c] : w.beta0) CHECK(n >= 0);
    for (const auto& [n, c] : w.beta1) CHECK(n >= 0);

    f.add(-1, Rational(1, 7));
    CHECK(!is_coboundary(f).is_coboundary);
}

TEST_CASE("random Laurent forms: coboundary iff zero residue, with witnesses") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> pw(-6, 6), num(-9, 9), den(1, 5);
    for (int t = 0; t < 500; ++t) {
        LaurentForm f;
        int terms = 1 + t % 5;
        for (int s = 0; s < terms; ++s) f.add(pw(rng), Rational(num(rng), den(rng)));
        auto d = is_coboundary(f);
        CHECK(d.is_coboundary == (f.residue() == 0));
        if (d.is_coboundary) CHECK(coboundary_of(d.beta0, d.beta1) == f);
    }
}

TEST_CASE("connection exists exactly for k = 0") {
    CHECK(connection_exists(CechLineBundle::with_default_metric(0)));
    CHECK(!connection_exists(CechLineBundle::with_default_metric(5)));
    CHECK(!connection_exists(CechLineBundle::with_default_metric(-1)));
    for (int k = -5; k <= 5; ++k) CHECK(connection_exists(CechLineBundle::with_default_metric(k)) == (k == 0));
}

TEST_CASE("default metric glues across the charts") {
    for (int k = -5; k <= 5; ++k) {
        auto l = CechLineBundle::with_default_metric(k);
        CHECK(metric_consistent(l));
        auto c1 = chart_one_metric(l);
        CHECK(c1.w_power == 0);
        CHECK(c1.s == -k);
        // numerically: f_1(w) = |z|^{2k} f_0(z) at w = 1/z equals (1 + |w|^2)^{-k}
        for (double r : {0.1, 0.7, 1.0, 3.0, 20.0}) {
            double f0 = std::pow(1 + r * r, -k);
            double f1 = std::pow(r, 2 * k) * f0;
            double w = 1 / r;
            CHECK(std::abs(f1 - std::pow(1 + w * w, -k)) <= 1e-12 * std::max(1.0, f1));
        }
    }
    CHECK(!metric_consistent(CechLineBundle{2, MetricFamily{2}}));
    CHECK_THROWS_AS(chern_integral(CechLineBundle{2, MetricFamily{2}}), std::invalid_argument);
}

TEST_CASE("chern integral examples") {
    CHECK(std::abs(chern_integral(CechLineBundle::with_default_metric(0)).value) < 1e-8);
    CHECK(std::abs(chern_integral(CechLineBundle::with_default_metric(1)).value - 1.0) < 1e-6);
    CHECK(std::abs(chern_integral(CechLineBundle::with_default_metric(-2)).value + 2.0) < 1e-6);
    CHECK_THROWS_AS(chern_integral(CechLineBundle::with_default_metric(1), 7), std::invalid_argument);
}

TEST_CASE("chern integral density matches a finite-difference Laplacian of log f") {
    // (i/2pi) dbar d log f = -(1/4pi) Laplacian(log f) dx dy
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = -3; k <= 3; ++k) {
        auto logf = [k](double x, double y) { return -k * std::log1p(x * x + y * y); };
        for (int t = 0; t < 20; ++t) {
            double x = u(rng), y = u(rng), h = 1e-3;
            double lap = (logf(x + h, y) + logf(x - h, y) + logf(x, y + h) + logf(x, y - h) - 4 * logf(x, y)) / (h * h);
            double density = -lap / (4 * std::numbers::pi);
            double closed = k / (std::numbers::pi * std::pow(1 + x * x + y * y, 2));
            CHECK(std::abs(density - closed) < 1e-5);
        }
    }
}

TEST_CASE("chern integral recovers k for k in [-5, 5] and the Richardson estimate is small") {
    for (int k = -5; k <= 5; ++k) {
        auto c = chern_integral(CechLineBundle::with_default_metric(k));
        CHECK(std::abs(c.value - k) < 1e-5);
        CHECK(std::lround(c.value) == k);
        CHECK(c.error_estimate < 1e-4);
        CHECK((std::lround(c.value) == 0) == connection_exists(CechLineBundle::with_default_metric(k)));
    }
}
