#include "diamond/detector.hpp"
#include "diamond/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace diamond;
using namespace diamond::detector;
using testing::Complex;
using testing::rel;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("Minkowski two-point function") {
    const Complex d = wightman_minkowski({1.0, 0, 0, 0}, {0.0, 0, 0, 0}, 1e-9);
    CHECK(rel(d, -1.0 / (4 * kPi * kPi)) < 1e-8);
    const geometry::MinkowskiEvent x{0.3, 0.1, -0.2, 0.05}, y{-0.4, 0.0, 0.3, 0.1};
    CHECK(std::abs(wightman_minkowski(x, y, 1e-3) - std::conj(wightman_minkowski(y, x, 1e-3))) < 1e-15);
    const double r = std::abs(wightman_minkowski({100.0, 0, 0, 0}, {}, 1e-3)) / std::abs(wightman_minkowski({200.0, 0, 0, 0}, {}, 1e-3));
    CHECK(std::abs(r - 4.0) < 1e-6);
    CHECK_THROWS_AS(wightman_minkowski(x, y, 0.0), std::invalid_argument);
}

TEST_CASE("kernel on the static worldline, reference value") {
    // mpmath, 30 digits
    CHECK(rel(scaled_integrand(1.0, -0.3, 1e-6), {-0.013044558993646693, -2.1349447167770167e-8}) < 1e-10);
    const Complex shifted = accelerated_wightman(matched_gap(1.0, -0.3, 1e-6));
    CHECK(rel(scaled_integrand(1.0, -0.3, 1e-6), shifted) < 1e-10);
}

TEST_CASE("kernel symmetry under exchange") {
    for (auto [e, ep] : {std::pair{1.0, -0.3}, std::pair{0.2, 2.1}, std::pair{-1.5, 0.4}}) {
        const Complex a = scaled_integrand(e, ep, 1e-4), b = scaled_integrand(ep, e, 1e-4);
        CHECK(std::abs(a.real() - b.real()) < 1e-12 * std::abs(a));
        CHECK(std::abs(a.imag() + b.imag()) < 1e-12 * std::abs(a));
    }
}

TEST_CASE("scaled kernel equals the accelerated kernel") {
    const IdentityCheck id = identity_residual(20, -3.0, 3.0, 1e-3, 1e-8);
    CHECK(id.max_residual <= 1e-10);
    CHECK(id.points == 380);
    CHECK_THROWS_AS(identity_residual(1, -3.0, 3.0, 1e-3, 1e-8), std::invalid_argument);
}

TEST_CASE("coincidence behaviour and imaginary-time period") {
    for (double t : {1e-3, 1e-4}) CHECK(rel(accelerated_wightman(Complex(t)), -1.0 / (4 * kPi * kPi * t * t)) < 1e-6);
    for (Complex t : {Complex(0.8, -0.01), Complex(-2.0, -0.3), Complex(5.0, -1.0)})
        CHECK(rel(accelerated_wightman(t + Complex(0.0, 2 * kPi)), accelerated_wightman(t)) < 1e-10);
    const geometry::DiamondScale s(2.0);
    CHECK(rel(accelerated_wightman(Complex(0.7, -0.1) + Complex(0.0, kPi), s), accelerated_wightman(Complex(0.7, -0.1), s)) < 1e-10);
}

TEST_CASE("stationarity as the regulator is removed") {
    for (double d : {0.3, 1.0, 2.5})
        for (double shift : {-1.0, 0.7, 2.0}) {
            const Complex a = scaled_integrand(d, 0.0, 1e-15), b = scaled_integrand(d + shift, shift, 1e-15);
            CHECK(rel(b, a) < 1e-12);
        }
}

TEST_CASE("thermal rate closed form") {
    CHECK(rel(thermal_rate(1.0), 1.0 / (2 * kPi * (std::exp(2 * kPi) - 1.0))) < 1e-14);
    CHECK(rel(thermal_rate(-1.0) * std::exp(-2 * kPi), thermal_rate(1.0)) < 1e-14);
    CHECK(rel(thermal_rate(1e-9), thermal_rate(0.0)) < 1e-6);
}

TEST_CASE("detailed balance") {
    std::vector<std::pair<double, double>> pts;
    for (double E : {0.5, 1.0, 2.0}) {
        const BalanceResult b = detailed_balance_ratio(E, 1e-3, 400.0);
        CAPTURE(E);
        CHECK(std::abs(b.ratio / b.expected - 1.0) < 0.02);
        CHECK(b.excitation.consistent);
        CHECK(b.deexcitation.consistent);
        CHECK(rel(b.excitation.rate, thermal_rate(E)) < 0.02);
        pts.emplace_back(E, b.ratio);
    }
    CHECK(rel(1.0 / fit_inverse_temperature(pts), 1.0 / (2 * kPi)) < 0.02);
}

TEST_CASE("rates fall with the gap") {
    double prev = 1.0;
    for (double E : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        const double r = response_rate(E, 1e-3, 400.0).rate;
        CHECK(r > 0.0);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(response_rate(0.0, 1e-3, 400.0), std::invalid_argument);
    CHECK_THROWS_AS(response_rate(1.0, -1e-3, 400.0), std::invalid_argument);
    CHECK_THROWS_AS(response_rate(1.0, 1e-3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fit_inverse_temperature({}), std::invalid_argument);
}
