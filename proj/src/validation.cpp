// validation.cpp: invariant checks at default tolerances

#include "diamond/validation.hpp"

#include "diamond/bogoliubov.hpp"
#include "diamond/correlations.hpp"
#include "diamond/detector.hpp"
#include "diamond/errors.hpp"
#include "diamond/gaussian.hpp"
#include "diamond/geometry.hpp"
#include "diamond/modes.hpp"
#include "diamond/specfun.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace diamond::validation {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Runner {
    std::string suite;
    std::vector<CheckResult> out;

    // fn returns the measured value; pass when cmp(value, bound) holds.
    void check(const std::string& name, double bound, const std::function<double()>& fn, bool upper = true,
               const std::string& note = {}) {
        CheckResult r;
        r.suite = suite;
        r.name = name;
        r.bound = bound;
        r.note = note;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r.value = fn();
            r.pass = std::isfinite(r.value) && (upper ? r.value <= bound : r.value >= bound);
        } catch (const std::exception& e) {
            r.pass = false;
            r.note = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(r);
    }
    void flag(const std::string& name, const std::function<bool()>& fn, const std::string& note = {}) {
        check(name, 0.5, [&] { return fn() ? 1.0 : 0.0; }, false, note);
    }
};

std::vector<CheckResult> specfun_suite() {
    Runner r{"specfun", {}};
    r.check("|Gamma(1+iW)|^2 sinh(pi W)/(pi W) = 1", 1e-12, [] {
        double worst = 0.0;
        for (double w : {0.01, 0.3, 1.0, 2.5, 5.0, 10.0, 30.0, 60.0}) {
            const double v = std::norm(specfun::gamma(Complex(1.0, w))) * std::sinh(kPi * w) / (kPi * w);
            worst = std::max(worst, std::abs(v - 1.0));
        }
        return worst;
    });
    r.check("reflection Gamma(z) Gamma(1-z) sin(pi z) = pi", 1e-12, [] {
        double worst = 0.0;
        for (Complex z : {Complex(0.3, 0.7), Complex(-2.4, 1.1), Complex(3.7, -2.0), Complex(0.5, 5.0)}) {
            const Complex v = specfun::gamma(z) * specfun::gamma(1.0 - z) * std::sin(kPi * z) / kPi;
            worst = std::max(worst, std::abs(v - 1.0));
        }
        return worst;
    });
    r.check("Kummer transformation M(a,b,z) = e^z M(b-a,b,-z)", 1e-10, [] {
        double worst = 0.0;
        for (double w : {0.3, 1.0, 2.0, 5.0})
            for (double k : {0.1, 1.0, 7.0, 30.0}) worst = std::max(worst, bogoliubov::kummer_consistency(w, k));
        return worst;
    });
    r.check("M(1,2,z) = (e^z - 1)/z", 1e-12, [] {
        double worst = 0.0;
        for (Complex z : {Complex(0.0, 4.0), Complex(0.0, -40.0), Complex(1.5, -3.0), Complex(0.0, 200.0)}) {
            const Complex ref = (std::exp(z) - 1.0) / z;
            worst = std::max(worst, std::abs(specfun::kummer_m(1.0, 2.0, z) - ref) / std::abs(ref));
        }
        return worst;
    });
    return r.out;
}

std::vector<CheckResult> geometry_suite() {
    Runner r{"geometry", {}};
    const geometry::DiamondScale s(1.0);
    r.check("round trip diamond -> Minkowski -> diamond", 1e-10, [&] {
        double worst = 0.0;
        for (double e = -3.0; e <= 3.0; e += 0.75)
            for (double x = -3.0; x <= 3.0; x += 0.75) {
                const geometry::DiamondEvent d{e, x, 0.2, -0.4};
                const geometry::DiamondEvent b = geometry::to_diamond(geometry::to_minkowski(d, s), s);
                worst = std::max({worst, std::abs(b.eta - e), std::abs(b.xi - x), std::abs(b.zeta - 0.2), std::abs(b.rho + 0.4)});
            }
        return worst;
    });
    r.check("static worldline t(eta=2) = 2 tanh(1)", 1e-14,
            [&] { return std::abs(geometry::worldline_clock(2.0, s) - 2.0 * std::tanh(1.0)); });
    r.check("null map inverse", 1e-12, [&] {
        double worst = 0.0;
        for (double v : {-6.0, -3.0, 0.0, 0.5, 6.0}) worst = std::max(worst, std::abs(geometry::null_inverse(geometry::null_map(v, s).V, s) - v) / std::max(1.0, std::abs(v)));
        return worst;
    });
    return r.out;
}

std::vector<CheckResult> modes_suite() {
    Runner r{"modes", {}};
    using namespace modes;
    r.check("diamond packet unit norm", 1e-9, [] {
        const Packet p{Family::diamond, 0, 1.0, 0.05, 1.0};
        return std::abs(kg_product(packet(p), packet(p), 1e-11).value - 1.0);
    });
    r.check("exterior packet unit norm", 1e-9, [] {
        const Packet p{Family::exterior, 0, 1.0, 0.05, 0.5};
        return std::abs(kg_product(packet(p), packet(p), 1e-11).value - 1.0);
    });
    r.check("<F, F*> = 0", 1e-10, [] {
        const Packet p{Family::diamond, 2, 1.5, 0.05, -2.0};
        return std::abs(kg_product(packet(p), packet(p, true), 1e-11).value);
    });
    r.check("KG overlap of two packets vs closed form", 1e-8, [] {
        const Packet p{Family::diamond, 0, 1.0, 0.1, 0.0}, q{Family::diamond, 0, 1.1, 0.1, 3.0};
        return std::abs(kg_product(packet(p), packet(q), 1e-11).value - packet_overlap(p, q));
    });
    return r.out;
}

std::vector<CheckResult> bogoliubov_suite() {
    Runner r{"bogoliubov", {}};
    r.check("closed-form A, B vs KG quadrature (3x3 grid, rel)", 1e-6, [] {
        double worst = 0.0;
        for (double w : {0.3, 1.0, 5.0})
            for (double k : {0.3, 1.5, 5.0}) {
                const bogoliubov::BogCoeffPair c = bogoliubov::coeffs(w, k, 0);
                const Complex a = std::conj(modes::sharp_diamond_product({0, w}, modes::sharp(modes::PlaneWave{k}), 1e-14).value);
                const Complex b = std::conj(modes::sharp_diamond_product({0, w}, modes::sharp(modes::PlaneWave{k}, true), 1e-14).value);
                worst = std::max({worst, std::abs(a - c.A) / std::abs(c.A), std::abs(b - c.B) / std::abs(c.B)});
            }
        return worst;
    });
    r.check("diamond phase A(1) = e^{-8i} A(0) at (1, 2)", 1e-13, [] {
        const Complex a0 = bogoliubov::coeffs(1.0, 2.0, 0).A, a1 = bogoliubov::coeffs(1.0, 2.0, 1).A;
        return std::abs(a1 - std::exp(Complex(0.0, -8.0)) * a0) / std::abs(a0);
    });
    r.check("thermal occupation (W0 = 1) / Planck - 1", 0.02, [] {
        const WavepacketSpec p{0, 1.0, 0.02, 0.0};
        return std::abs(bogoliubov::thermal_occupation(p, geometry::DiamondScale{}, 1e300, 1e-4).value / bogoliubov::planck(1.0) - 1.0);
    });
    r.check("completeness (W0 = 1) - 1", 0.01, [] {
        const WavepacketSpec p{0, 1.0, 0.02, 0.0};
        return std::abs(bogoliubov::completeness_check(p, geometry::DiamondScale{}, 1e300, 1e-4).value - 1.0);
    });
    return r.out;
}

std::vector<CheckResult> correlations_suite() {
    Runner r{"correlations", {}};
    r.check("adjacent closed form vs quadrature (rel)", 1e-4, [] {
        double worst = 0.0;
        for (auto [w, wp] : {std::pair{1.0, 1.3}, std::pair{0.5, 1.5}, std::pair{2.0, 0.7}}) {
            const auto a = correlations::alpha_beta_adjacent(w, wp);
            const auto n = correlations::alpha_beta_numeric(w, wp, 1, 1e-12);
            worst = std::max({worst, std::abs(a.alpha - n.alpha) / std::abs(a.alpha), std::abs(a.beta - n.beta) / std::abs(a.beta)});
        }
        return worst;
    });
    r.check("large-n form / quadrature at n = 20 deviation", 0.1, [] {
        const auto num = correlations::cross_moments(1.0, 1.0, 20, 1e-12);
        return std::abs(correlations::asymptotic_moment(1.0, 1.0, 20).bb.real() / num.bb.real() - 1.0);
    });
    r.check("smeared n = 1 moments vs two-point function (rel)", 1e-6, [] {
        const WavepacketSpec p{0, 1.0, 0.02, 0.0}, q{1, 1.0, 0.02, 0.0};
        const auto s = correlations::smeared_moments(p, q, 1e-10);
        const auto d = correlations::direct_moments(p, q, 1e-10);
        return std::max(std::abs(s.bb - d.bb) / std::abs(d.bb), std::abs(s.bdag_b - d.bdag_b) / std::abs(d.bdag_b));
    });
    return r.out;
}

std::vector<CheckResult> gaussian_suite() {
    Runner r{"gaussian", {}};
    const std::vector<WavepacketSpec> pair{{0, 1.0, 0.02, 0.0}, {1, 1.0, 0.02, 0.0}};
    r.check("physicality min eig(M + i Sigma)", -1e-9, [&] { return gaussian::build_covariance(pair, 1e-9).min_eig; }, false);
    r.check("Minkowski packet shot noise |V - 1|", 1e-6, [] {
        const auto c = gaussian::build_covariance({WavepacketSpec{0, 1.0, 0.02, 0.0, Host::minkowski}}, 1e-9);
        double worst = 0.0;
        for (double phi : {0.0, 0.4, 1.3, 2.9}) worst = std::max(worst, std::abs(gaussian::variance(c, 0, phi) - 1.0));
        return worst;
    });
    r.check("thermal isotropy of a diamond mode (rel spread)", 0.01, [] {
        const auto c = gaussian::build_covariance({WavepacketSpec{0, 1.0, 0.02, 0.0}}, 1e-9);
        double lo = 1e9, hi = -1e9;
        for (double phi : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
            const double v = gaussian::variance(c, 0, phi);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return (hi - lo) / lo;
    });
    r.flag("adjacent diamonds entangled", [&] { return gaussian::squeezing_witness(gaussian::build_covariance(pair, 1e-9), 0, 1).entangled; });
    r.flag("diamonds 0 and 20 not witnessed", [] {
        const auto c = gaussian::build_covariance({WavepacketSpec{0, 1.0, 0.02, 0.0}, WavepacketSpec{20, 1.0, 0.02, 0.0}}, 1e-9);
        return !gaussian::squeezing_witness(c, 0, 1).entangled;
    });
    return r.out;
}

std::vector<CheckResult> detector_suite() {
    Runner r{"detector", {}};
    r.check("scaled kernel = accelerated kernel (20x20 grid)", 1e-10,
            [] { return detector::identity_residual(20, -3.0, 3.0, 1e-3, 1e-8).max_residual; });
    r.check("stationarity of the scaled kernel", 1e-12, [] {
        double worst = 0.0;
        for (double d : {0.3, 1.0, 2.5})
            for (double shift : {-1.0, 0.7, 2.0}) {
                const Complex a = detector::scaled_integrand(d, 0.0, 1e-15), b = detector::scaled_integrand(d + shift, shift, 1e-15);
                worst = std::max(worst, std::abs(a - b) / std::abs(a));
            }
        return worst;
    });
    r.check("KMS periodicity dtau -> dtau + 2 pi i", 1e-10, [] {
        const Complex t(0.8, -0.01);
        const Complex a = detector::accelerated_wightman(t), b = detector::accelerated_wightman(t + Complex(0.0, 2.0 * kPi));
        return std::abs(a - b) / std::abs(a);
    });
    r.check("detailed balance at E = 1 (rel)", 0.02, [] {
        const auto b = detector::detailed_balance_ratio(1.0, 1e-3, 400.0);
        return std::abs(b.ratio / b.expected - 1.0);
    });
    return r.out;
}

} // namespace

std::vector<std::string> suite_names() {
    return {"specfun", "geometry", "modes", "bogoliubov", "correlations", "gaussian", "detector"};
}

std::vector<CheckResult> run_suite(const std::string& name) {
    if (name == "specfun") return specfun_suite();
    if (name == "geometry") return geometry_suite();
    if (name == "modes") return modes_suite();
    if (name == "bogoliubov") return bogoliubov_suite();
    if (name == "correlations") return correlations_suite();
    if (name == "gaussian") return gaussian_suite();
    if (name == "detector") return detector_suite();
    throw std::invalid_argument("unknown validation suite: " + name);
}

std::vector<CheckResult> run_all() {
    std::vector<CheckResult> all;
    for (const auto& s : suite_names()) {
        auto part = run_suite(s);
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

} // namespace diamond::validation
