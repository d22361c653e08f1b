#include "diamond/errors.hpp"
#include "diamond/specfun.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace diamond;
using testing::Complex;
using testing::rel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gamma: integer and simple points") {
    CHECK(rel(specfun::gamma(1.0), 1.0) < 1e-14);
    CHECK(rel(specfun::gamma(5.0), 24.0) < 1e-14);
    CHECK(rel(specfun::gamma(0.5), std::sqrt(kPi)) < 1e-14);
    CHECK(rel(std::norm(specfun::gamma(Complex(1.0, 1.0))), kPi / std::sinh(kPi)) < 1e-13);
}

TEST_CASE("gamma: reference values") {
    // mpmath, 30 digits
    CHECK(rel(specfun::gamma({0.5, 2.0}), {0.089855176706431636, -0.060493760292887568}) < 1e-13);
    CHECK(rel(specfun::gamma({-1.5, 0.3}), {1.5979272780754663, 0.343934638111282}) < 1e-13);
    CHECK(rel(specfun::gamma({1.0, -5.0}), {-0.0016996644943606798, 0.0013585194175307527}) < 1e-12);
    const Complex lg = specfun::log_gamma({3.0, 40.0});
    CHECK(std::abs(lg.real() - -52.689155060822637) < 1e-11);
    CHECK(std::abs(std::remainder(lg.imag() - 111.40513241545997, 2 * kPi)) < 1e-11);
}

TEST_CASE("gamma: poles and reciprocal") {
    CHECK_THROWS_AS(specfun::gamma(0.0), PoleError);
    CHECK_THROWS_AS(specfun::gamma(-3.0), PoleError);
    CHECK(specfun::rgamma(-2.0) == Complex(0.0));
    CHECK(rel(specfun::rgamma({0.7, 1.2}) * specfun::gamma({0.7, 1.2}), 1.0) < 1e-14);
}

TEST_CASE("gamma: modulus identity on the imaginary line") {
    for (double w : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double v = std::norm(specfun::gamma({1.0, w})) * std::sinh(kPi * w) / (kPi * w);
        CHECK(std::abs(v - 1.0) < 1e-12);
    }
}

TEST_CASE("gamma: recurrence and conjugation") {
    for (Complex z : {Complex(0.3, 0.4), Complex(2.5, -3.0), Complex(-1.7, 0.9), Complex(7.0, 12.0)}) {
        CHECK(rel(specfun::gamma(z + 1.0), z * specfun::gamma(z)) < 1e-12);
        CHECK(rel(specfun::gamma(std::conj(z)), std::conj(specfun::gamma(z))) < 1e-14);
    }
}

TEST_CASE("kummer: reference values") {
    // mpmath hyp1f1, 30 digits
    struct Row { Complex a; Complex z; Complex want; };
    const Row rows[] = {
        {{1, 1}, {0, -6}, {-3.2994501251787319, -0.4703252093902214}},
        {{1, 0.3}, {0, 28}, {0.0033441425762408052, 0.024226997432998464}},
        {{1, 5}, {0, 40}, {-0.0019449211764798031, -0.0043511016956162528}},
        {{1, 20}, {0, -4}, {-219828.58791938547, -480334.22768834684}},
        {{1, 1}, {0, -400}, {-0.019750683514170642, -0.035403643022796476}},
        {{1, 50}, {0, 100}, {0.00063306955714497363, -0.0001721320000247874}},
    };
    for (const auto& r : rows) {
        CAPTURE(r.a);
        CAPTURE(r.z);
        CHECK(rel(specfun::kummer_m(r.a, 2.0, r.z), r.want) < 1e-11);
    }
}

TEST_CASE("kummer: trivial and closed forms") {
    CHECK(specfun::kummer_m({1.0, 0.7}, 2.0, 0.0) == Complex(1.0));
    CHECK(specfun::kummer_m_detail({3.0, -2.0}, {1.5, 0.2}, 0.0).method == specfun::KummerMethod::trivial);
    const Complex z(0.0, 4.0);
    CHECK(rel(specfun::kummer_m(1.0, 2.0, z), (std::exp(z) - 1.0) / z) < 1e-12);
}

TEST_CASE("kummer: transformation identity") {
    const Complex a(1.0, 0.7), b(2.0), z(0.0, -4.0 * 3.2);
    const Complex lhs = specfun::kummer_m(a, b, z);
    const Complex rhs = std::exp(z) * specfun::kummer_m(b - a, b, -z);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
}

TEST_CASE("kummer: conjugation symmetry for real b") {
    for (double w : {0.3, 2.0, 8.0})
        for (double k : {0.5, 5.0, 30.0}) {
            const Complex a(1.0, w), z(0.0, 4.0 * k);
            CHECK(rel(specfun::kummer_m(std::conj(a), 2.0, std::conj(z)), std::conj(specfun::kummer_m(a, 2.0, z))) < 1e-12);
        }
}

TEST_CASE("kummer: domain errors") {
    CHECK_THROWS_AS(specfun::kummer_m(1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(specfun::kummer_m(1.0, -2.0, 1.0), DomainError);
    CHECK_THROWS_AS(specfun::kummer_m(1.0, 2.0, std::nan("")), DomainError);
}

TEST_CASE("kummer: method labels") {
    CHECK(std::string(specfun::to_string(specfun::KummerMethod::series_mpfr)) == "series_mpfr");
    const auto far = specfun::kummer_m_detail({1.0, 1.0}, 2.0, {0.0, -400.0});
    CHECK(far.method == specfun::KummerMethod::asymptotic);
    CHECK(far.est_rel_error < 1e-12);
}
