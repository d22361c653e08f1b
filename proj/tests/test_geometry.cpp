#include "diamond/errors.hpp"
#include "diamond/geometry.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace diamond;
using namespace diamond::geometry;

namespace {

const DiamondScale unit{};

double interval(const MinkowskiEvent& a, const MinkowskiEvent& b) {
    const double dt = b.t - a.t, dx = b.x - a.x, dy = b.y - a.y, dz = b.z - a.z;
    return dt * dt - dx * dx - dy * dy - dz * dz;
}

MinkowskiEvent random_interior(std::mt19937_64& rng, double reach) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const MinkowskiEvent e{reach * u(rng), reach * u(rng), reach * u(rng), reach * u(rng)};
        if (std::abs(e.t) + e.r() < reach) return e;
    }
}

} // namespace

TEST_CASE("origin maps to origin") {
    const DiamondEvent d = to_diamond({}, unit);
    CHECK(d.eta == 0.0);
    CHECK(d.xi == 0.0);
    CHECK(d.zeta == 0.0);
    CHECK(d.rho == 0.0);
    const MinkowskiEvent m = to_minkowski({}, unit);
    CHECK(m.t == 0.0);
    CHECK(m.x == 0.0);
}

TEST_CASE("static worldline") {
    const DiamondEvent d = to_diamond({2.0 * std::tanh(1.0), 0.0, 0.0, 0.0}, unit);
    CHECK(std::abs(d.eta - 2.0) < 1e-12);
    CHECK(std::abs(d.xi) < 1e-12);
    const MinkowskiEvent m = to_minkowski({3.0, 0.0, 0.0, 0.0}, unit);
    CHECK(std::abs(m.t - 2.0 * std::tanh(1.5)) < 1e-12);
    CHECK(std::abs(m.x) < 1e-12);
    CHECK(worldline_clock(0.0, unit) == 0.0);
    CHECK(std::abs(worldline_rate(0.0, unit) - 1.0) < 1e-15);
    CHECK(std::abs(worldline_clock(2.0, unit) - 1.5231883119115297) < 1e-15);
    CHECK(std::abs(worldline_clock(60.0, unit) - 2.0) < 1e-15);
}

TEST_CASE("physical scale") {
    const DiamondScale s(2.5);
    CHECK(std::abs(worldline_clock(1.0, s) - 0.8 * std::tanh(1.25)) < 1e-15);
    CHECK(s.half_size() == doctest::Approx(0.8));
    CHECK(s.lifetime() == doctest::Approx(1.6));
    CHECK_THROWS(DiamondScale(0.0));
}

TEST_CASE("outside the diamond is rejected") {
    CHECK_THROWS_AS(to_diamond({1.5, 0.6, 0.0, 0.0}, unit), DomainError);
    CHECK_THROWS_AS(null_inverse(2.0, unit), DomainError);
}

TEST_CASE("round trip on random interior events") {
    std::mt19937_64 rng(20240611);
    double worst = 0.0, worst_back = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const MinkowskiEvent e = random_interior(rng, 1.9);
        const MinkowskiEvent b = to_minkowski(to_diamond(e, unit), unit);
        worst = std::max({worst, std::abs(b.t - e.t), std::abs(b.x - e.x), std::abs(b.y - e.y), std::abs(b.z - e.z)});
        const DiamondEvent d = to_diamond(e, unit);
        const DiamondEvent d2 = to_diamond(to_minkowski(d, unit), unit);
        worst_back = std::max({worst_back, std::abs(d2.eta - d.eta), std::abs(d2.xi - d.xi), std::abs(d2.zeta - d.zeta),
                               std::abs(d2.rho - d.rho)});
    }
    CHECK(worst < 1e-12);
    CHECK(worst_back < 1e-10);
}

TEST_CASE("line element at the origin") {
    CHECK(std::abs(line_element({}, {1e-3, 0, 0, 0}, unit) - 1e-6) < 1e-18);
    CHECK(std::abs(line_element({}, {0, 0, 1e-3, 0}, unit) + 0.25e-6) < 1e-18);
}

TEST_CASE("line element equals the pulled-back Minkowski interval") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double h = 1e-5;
    for (int i = 0; i < 200; ++i) {
        const DiamondEvent d = to_diamond(random_interior(rng, 1.6), unit);
        const DiamondEvent dd{h * u(rng), h * u(rng), h * u(rng), h * u(rng)};
        const DiamondEvent lo{d.eta - 0.5 * dd.eta, d.xi - 0.5 * dd.xi, d.zeta - 0.5 * dd.zeta, d.rho - 0.5 * dd.rho};
        const DiamondEvent hi{d.eta + 0.5 * dd.eta, d.xi + 0.5 * dd.xi, d.zeta + 0.5 * dd.zeta, d.rho + 0.5 * dd.rho};
        const double want = interval(to_minkowski(lo, unit), to_minkowski(hi, unit));
        const double got = line_element(d, dd, unit);
        if (std::abs(want) < 1e-13) continue;  // nearly null: relative error meaningless
        CAPTURE(i);
        CHECK(testing::rel(got, want) < 1e-6);
    }
}

TEST_CASE("constant xi curves are hyperbolae of proper acceleration sinh(xi)/2") {
    for (double xi0 : {0.4, -1.1, 2.0}) {
        const double want = 0.5 * std::abs(std::sinh(xi0));
        const double h = 1e-3;
        for (double eta : {-1.0, 0.0, 0.7, 1.5}) {
            auto at = [&](double e) { return to_minkowski({e, xi0, 0.0, 0.0}, unit); };
            const MinkowskiEvent m0 = at(eta - h), m1 = at(eta), m2 = at(eta + h);
            const double tp = (m2.t - m0.t) / (2 * h), xp = (m2.x - m0.x) / (2 * h);
            const double tpp = (m2.t - 2 * m1.t + m0.t) / (h * h), xpp = (m2.x - 2 * m1.x + m0.x) / (h * h);
            const double acc = std::abs(tp * xpp - xp * tpp) / std::pow(tp * tp - xp * xp, 1.5);
            CAPTURE(xi0);
            CAPTURE(eta);
            CHECK(testing::rel(acc, want) < 1e-4);
        }
    }
}

TEST_CASE("null map") {
    CHECK(null_map(0.0, unit).V == 0.0);
    CHECK(std::abs(null_map(40.0, unit).V - 2.0) < 1e-15);
    CHECK(std::abs(null_map(-40.0, unit).V + 2.0) < 1e-15);
    double prev = -2.0;
    for (double v = -10.0; v <= 10.0; v += 0.05) {
        const double V = null_map(v, unit).V;
        CHECK(V > prev);
        prev = V;
    }
    const double v = 1.7, W = 1.3;
    const double V = null_map(v, unit).V;
    const testing::Complex lhs = std::pow(testing::Complex((1 + V / 2) / (1 - V / 2)), testing::Complex(0.0, -W));
    CHECK(std::abs(lhs - std::exp(testing::Complex(0.0, -W * v))) < 1e-12);
    CHECK(std::abs(null_map(v, unit).dV_dv - 1.0 / std::pow(std::cosh(v / 2), 2)) < 1e-15);
}
