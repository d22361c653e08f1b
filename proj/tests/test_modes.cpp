#include "diamond/errors.hpp"
#include "diamond/geometry.hpp"
#include "diamond/modes.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace diamond;
using namespace diamond::modes;
using testing::Complex;

namespace {
const double kPi = std::numbers::pi;
double unit_norm(double w) { return 1.0 / std::sqrt(4.0 * kPi * w); }
} // namespace

TEST_CASE("diamond mode values") {
    const double w = 1.3;
    CHECK(std::abs(eval_mode(DiamondMode{0, w}, 0.0).value - unit_norm(w)) < 1e-15);
    for (double V = -1.99; V < 2.0; V += 0.1) CHECK(std::abs(std::abs(eval_mode(DiamondMode{0, w}, V).value) - unit_norm(w)) < 1e-14);
    CHECK(std::abs(eval_mode(DiamondMode{1, w}, 4.0).value - eval_mode(DiamondMode{0, w}, 0.0).value) < 1e-15);
    CHECK(std::abs(eval_mode(DiamondMode{3, w}, 12.7).value - eval_mode(DiamondMode{0, w}, 0.7).value) < 1e-13);
}

TEST_CASE("phase equivalence with the diamond null coordinate") {
    const geometry::DiamondScale unit{};
    for (double w : {0.5, 1.0, 3.0})
        for (double v : {-4.0, -0.3, 0.0, 1.7, 5.0}) {
            const double V = geometry::null_map(v, unit).V;
            const Complex want = std::exp(Complex(0.0, -w * v)) * unit_norm(w);
            CHECK(std::abs(eval_mode(DiamondMode{0, w}, V).value - want) < 1e-12);
        }
}

TEST_CASE("supports") {
    for (int n : {0, 1, 4}) {
        CHECK(eval_mode(DiamondMode{n, 1.0}, 4.0 * n - 2.0001).value == Complex(0.0));
        CHECK(eval_mode(DiamondMode{n, 1.0}, 4.0 * n + 2.0001).value == Complex(0.0));
        CHECK(eval_mode(DiamondMode{n, 1.0}, 4.0 * n + 2.0).boundary);
        CHECK(std::abs(eval_mode(DiamondMode{n, 1.0}, 4.0 * n + 1.9).value) > 0.0);
    }
    for (double V : {-1.999, -1.0, 0.0, 1.5, 1.999}) CHECK(eval_mode(ExteriorMode{1.0}, V).value == Complex(0.0));
    CHECK(std::abs(std::abs(eval_mode(ExteriorMode{1.0}, 3.0).value) - unit_norm(1.0)) < 1e-14);
    CHECK(std::abs(std::abs(eval_mode(PlaneWave{2.0}, -7.3).value) - unit_norm(2.0)) < 1e-15);
}

TEST_CASE("invalid frequencies") {
    CHECK_THROWS_AS(eval_mode(DiamondMode{0, 0.0}, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(eval_mode(PlaneWave{-1.0}, 0.3), std::invalid_argument);
}

TEST_CASE("packet normalization") {
    const Packet g{Family::diamond, 0, 1.0, 0.02, 0.0};
    CHECK(std::abs(kg_product(packet(g), packet(g), 1e-10).value - 1.0) < 1e-8);
    CHECK(std::abs(kg_product(packet(g), packet(g, true), 1e-10).value) < 1e-10);
    const Packet g1{Family::diamond, 1, 1.0, 0.02, 0.0};
    CHECK(std::abs(kg_product(packet(g), packet(g1), 1e-10).value) < 1e-10);
    const Packet pw{Family::plane, 0, 2.0, 0.1, -3.0};
    CHECK(std::abs(kg_product(packet(pw), packet(pw), 1e-10).value - 1.0) < 1e-8);
    const Packet ex{Family::exterior, 0, 0.7, 0.05, 1.0};
    CHECK(std::abs(kg_product(packet(ex), packet(ex), 1e-10).value - 1.0) < 1e-8);
}

TEST_CASE("KG product of same-diamond packets equals the Gaussian overlap") {
    struct P { double w1, v1, w2, v2, sigma; };
    for (const P& p : {P{1.0, 0.0, 1.02, 0.0, 0.02}, P{1.0, 0.0, 1.0, 15.0, 0.05}, P{0.8, -2.0, 1.0, 3.0, 0.15},
                       P{2.0, 1.0, 2.1, 1.5, 0.1}}) {
        for (int n : {0, 2}) {
            const Packet a{Family::diamond, n, p.w1, p.sigma, p.v1}, b{Family::diamond, n, p.w2, p.sigma, p.v2};
            CHECK(std::abs(kg_product(packet(a), packet(b), 1e-10).value - packet_overlap(a, b)) < 1e-6);
        }
    }
}

TEST_CASE("conjugate sector antisymmetry") {
    const Packet a{Family::diamond, 0, 1.0, 0.1, 0.5};
    const Packet b{Family::plane, 0, 0.6, 0.1, 0.3};
    const Packet c{Family::exterior, 0, 1.2, 0.1, -0.4};
    const Packet d{Family::diamond, 1, 0.9, 0.1, 0.0};
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, c}, std::pair{d, c}, std::pair{a, a}}) {
        const Complex lhs = kg_product(packet(x, true), packet(y, true), 1e-11).value;
        const Complex rhs = kg_product(packet(x), packet(y), 1e-11).value;
        CHECK(std::abs(lhs + std::conj(rhs)) < 1e-9);
    }
}

TEST_CASE("sharp inputs") {
    CHECK_THROWS_AS(kg_product(sharp(DiamondMode{0, 1.0}), sharp(PlaneWave{1.0}), 1e-8, KGOptions{false, 0.02}),
                    DistributionalInputError);
    CHECK_THROWS_AS(sharp_diamond_product({0, 1.0}, sharp(DiamondMode{0, 1.2}), 1e-8), DistributionalInputError);
    // a diamond mode against a plane wave; the closed form of this product is checked in the coefficient tests
    const KGProduct r = sharp_diamond_product({0, 1.0}, sharp(PlaneWave{1.5}), 1e-12);
    CHECK(std::abs(std::abs(r.value) - 0.70688816439776467) < 1e-8);
}

TEST_CASE("chart evaluation matches global evaluation") {
    const Mode m = sharp(DiamondMode{1, 1.4});
    const Chart c{ChartKind::diamond, 1};
    for (double s : {-3.0, 0.0, 2.2}) {
        const ChartSample cs = eval_in_chart(m, c, s);
        CHECK(std::abs(cs.f - eval_mode(DiamondMode{1, 1.4}, c.to_V(s)).value) < 1e-14);
        const double h = 1e-5;
        const Complex fd = (eval_in_chart(m, c, s + h).f - eval_in_chart(m, c, s - h).f) / (2 * h);
        CHECK(std::abs(cs.df - fd) < 1e-8);
    }
    CHECK(Chart{ChartKind::exterior, 0}.orientation() == -1.0);
}
