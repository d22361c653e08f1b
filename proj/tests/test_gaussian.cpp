#include "diamond/bogoliubov.hpp"
#include "diamond/errors.hpp"
#include "diamond/gaussian.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numbers>

using namespace diamond;
using namespace diamond::gaussian;

namespace {
const double kPi = std::numbers::pi;
const WavepacketSpec d0{0, 1.0, 0.02, 0.0}, d1{1, 1.0, 0.02, 0.0};
const double phases[] = {0.0, 0.3, 0.2 * kPi, 1.1, kPi / 2, 2.5, 4.0, -0.7};
} // namespace

TEST_CASE("Minkowski packets sit at shot noise") {
    const auto c = build_covariance({{0, 1.0, 0.02, 0.0, Host::minkowski}, {0, 3.0, 0.02, 4.0, Host::minkowski}}, 1e-9);
    CHECK((c.M - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs(c.Sigma(0, 1) - 1.0) < 1e-9);
    CHECK(c.min_eig >= -1e-9);
    for (double phi : phases) {
        CHECK(std::abs(variance(c, 0, phi) - 1.0) < 1e-6);
        CHECK(std::abs(joint_variance(c, 0, 1, Sign::plus, phi) - 1.0) < 1e-6);
        CHECK(std::abs(joint_variance(c, 0, 1, Sign::minus, phi) - 1.0) < 1e-6);
    }
}

TEST_CASE("single diamond packet is thermal and isotropic") {
    const auto c = build_covariance({d0}, 1e-9);
    const double nbar = bogoliubov::thermal_occupation(d0, geometry::DiamondScale{}, 1e300, 1e-5).value;
    for (double phi : phases) CHECK(testing::rel(variance(c, 0, phi), 1.0 + 2.0 * nbar) < 1e-3);
    CHECK(c.min_eig >= -1e-9);
}

TEST_CASE("adjacent diamonds") {
    const auto c = build_covariance({d0, d1}, 1e-9);
    CHECK(c.min_eig >= -1e-9);
    CHECK(c.M.block<2, 2>(0, 2).cwiseAbs().maxCoeff() > 1e-3);
    const Witness w = squeezing_witness(c, 0, 1);
    CHECK(w.entangled);
    CHECK(w.V_minus_0 < 1.0);
    CHECK(w.V_plus_half_pi < 1.0);
    CHECK(joint_variance(c, 0, 1, Sign::minus, 0.0) == doctest::Approx(w.V_minus_0));
    for (double phi : phases) {
        const double s = joint_variance(c, 0, 1, Sign::plus, phi) + joint_variance(c, 0, 1, Sign::minus, phi);
        CHECK(std::abs(s - variance(c, 0, phi) - variance(c, 1, phi)) < 1e-12);
        CHECK(std::abs(joint_variance(c, 0, 1, Sign::minus, phi) - joint_variance(c, 1, 0, Sign::minus, phi)) < 1e-12);
    }
}

TEST_CASE("relabelling permutes the blocks") {
    const auto a = build_covariance({d0, d1}, 1e-9), b = build_covariance({d1, d0}, 1e-9);
    CHECK((a.M.block<2, 2>(0, 0) - b.M.block<2, 2>(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.M.block<2, 2>(0, 2) - b.M.block<2, 2>(2, 0)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.Sigma.block<2, 2>(0, 0) - b.Sigma.block<2, 2>(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("translation by whole diamonds") {
    const auto a = squeezing_witness(build_covariance({d0, d1}, 1e-9), 0, 1);
    const auto b = squeezing_witness(build_covariance({{3, 1.0, 0.02, 0.0}, {4, 1.0, 0.02, 0.0}}, 1e-9), 0, 1);
    CHECK(a.entangled == b.entangled);
    CHECK(std::abs(a.V_minus_0 - b.V_minus_0) < 1e-8);
    CHECK(std::abs(a.V_plus_half_pi - b.V_plus_half_pi) < 1e-8);
}

TEST_CASE("distant diamonds are not witnessed") {
    const auto c = build_covariance({d0, {20, 1.0, 0.02, 0.0}}, 1e-9);
    CHECK(c.min_eig >= -1e-9);
    CHECK_FALSE(squeezing_witness(c, 0, 1).entangled);
}

TEST_CASE("argument checks") {
    const auto c = build_covariance({d0, d1}, 1e-9);
    CHECK_THROWS_AS(squeezing_witness(c, 1, 1), std::out_of_range);
    CHECK_THROWS_AS(variance(c, 2, 0.0), std::out_of_range);
    CHECK_THROWS_AS(joint_variance(c, 0, -1, Sign::plus, 0.0), std::out_of_range);
    CHECK_THROWS_AS(variance(c, 0, std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(build_covariance({}, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(build_covariance({d0, {0, 1.0, 0.02, 0.0, Host::minkowski}}, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(build_covariance({{0, 0.05, 0.02, 0.0}}, 1e-9), std::invalid_argument);
    CHECK(std::abs(variance(c, 0, 0.3) - variance(c, 0, 0.3 + 2 * kPi)) < 1e-12);
}

TEST_CASE("figure sweep") {
    const auto rows = fig2_sweep(default_fig2_phases(), default_fig2_grid(), Fig2Fixed{}, 1e-9);
    REQUIRE(rows.size() == 2 * 101);
    auto arg_min = [&](double phi) {
        const Fig2Row* best = nullptr;
        for (const auto& r : rows)
            if (r.phi == phi && (!best || r.V_minus < best->V_minus)) best = &r;
        return *best;
    };
    const Fig2Row m0 = arg_min(0.0), m1 = arg_min(0.2 * kPi);
    CHECK(std::abs(m0.omega1 - 1.0) < 0.005);
    CHECK(m0.V_minus < 1.0);
    CHECK(std::abs(m1.omega1 - 1.0) > 0.005);
    CHECK(m1.V_minus < 1.0);
    const auto at_one = std::find_if(rows.begin(), rows.end(), [](const Fig2Row& r) { return r.phi == 0.0 && std::abs(r.omega1 - 1.0) < 1e-9; });
    REQUIRE(at_one != rows.end());
    CHECK(at_one->V_minus < 1.0);
    CHECK(at_one->entangled);
    CHECK_THROWS_AS(fig2_sweep({}, default_fig2_grid(), Fig2Fixed{}, 1e-9), std::invalid_argument);
}
