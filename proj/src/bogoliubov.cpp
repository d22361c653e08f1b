// bogoliubov.cpp: closed-form coefficients and smeared kappa integrals

#include "diamond/bogoliubov.hpp"

#include "diamond/errors.hpp"
#include "diamond/quadrature.hpp"
#include "diamond/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace diamond::bogoliubov {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

void check_args(double Omega, double kappa) {
    if (!(Omega > 0.0) || !std::isfinite(Omega)) throw std::invalid_argument("bogoliubov: Omega must be finite and > 0");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("bogoliubov: kappa must be finite and > 0");
}

double prefactor(double Omega, double kappa) { return 2.0 * std::sqrt(Omega * kappa) / std::sinh(kPi * Omega); }

// sum_s (p)_s (q)_s / (s! z^s), truncated at the smallest term
Complex asym_series(Complex p, Complex q, Complex z) {
    Complex term = 1.0, sum = 1.0;
    double last = 1.0;
    for (int s = 0; s < 400; ++s) {
        term *= (p + double(s)) * (q + double(s)) / (double(s + 1) * z);
        const double t = std::abs(term);
        if (t > last) break;
        sum += term;
        last = t;
        if (t < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// sqrt(kappa) * X parts at a = 1 for diamond 0 on the log scale u = log kappa.
AsymptoticParts parts_log(double Omega, double u, bool want_A) {
    const Complex a(1.0, Omega);
    const double kappa = std::exp(u);
    const double c = 2.0 * std::sqrt(Omega) / std::sinh(kPi * Omega);
    const double sgn = want_A ? -1.0 : 1.0;              // z = sgn * 4 i kappa
    const Complex z = Complex(0.0, sgn * 4.0 * kappa);
    const Complex logz(u + std::log(4.0), sgn * kPi / 2);    // log z
    const Complex logmz(u + std::log(4.0), -sgn * kPi / 2);  // log(-z)
    // sqrt(kappa) * sqrt(kappa) * z^{a-2} = exp(u + (a - 2) log z), likewise for (-z)^{-a}
    const Complex s1 = asym_series(2.0 - a, 1.0 - a, z);
    const Complex s2 = asym_series(a, a - 1.0, -z);
    const Complex t1 = std::exp(u + (a - 2.0) * logz) * s1 * specfun::rgamma(a);
    const Complex t2 = std::exp(u - a * logmz) * s2 * specfun::rgamma(2.0 - a);
    if (want_A) return {c * t2, c * t1};  // A = e^{-2iK} pref t1' + e^{2iK} pref t2'
    return {-c * t1, -c * t2};            // B = -e^{2iK} pref t1' - e^{-2iK} pref t2'
}

struct Smearer {
    WavepacketSpec p;
    explicit Smearer(const WavepacketSpec& spec) : p(spec) {}
    SmearNodes at(double u) const { return smear_nodes(p, std::abs(u + std::log(4.0)) + 3.0); }
};

// |\int G* X^(n)|^2 with the exact coefficients; the diamond phase e^{-+4inK}
// is independent of w and drops out of the modulus.
double exact_square(const Smearer& sm, double kappa, bool want_A) {
    const SmearNodes nd = sm.at(std::log(kappa));
    Complex s = 0.0;
    for (std::size_t i = 0; i < nd.omega.size(); ++i) {
        const BogCoeffPair c = coeffs(nd.omega[i], kappa, 0);
        s += nd.weight[i] * (want_A ? c.A : c.B);
    }
    return std::norm(s);
}

struct SmearedParts {
    Complex plus, minus;  // sqrt(kappa)-scaled
};

SmearedParts smeared_parts(const Smearer& sm, double u, bool want_A) {
    const SmearNodes nd = sm.at(u);
    SmearedParts out{0.0, 0.0};
    for (std::size_t i = 0; i < nd.omega.size(); ++i) {
        const AsymptoticParts ap = parts_log(nd.omega[i], u, want_A);
        out.plus += nd.weight[i] * ap.plus;
        out.minus += nd.weight[i] * ap.minus;
    }
    return out;
}

} // namespace

BogCoeffPair coeffs(double Omega, double kappa, int n, const geometry::DiamondScale& scale) {
    check_args(Omega, kappa);
    const double pref = prefactor(Omega, kappa);
    const Complex a(1.0, Omega);
    const Complex mA = specfun::kummer_m(a, 2.0, Complex(0.0, -4.0 * kappa));
    const Complex mB = specfun::kummer_m(a, 2.0, Complex(0.0, 4.0 * kappa));
    Complex A = pref * std::exp(Complex(0.0, 2.0 * kappa)) * mA;
    Complex B = -pref * std::exp(Complex(0.0, -2.0 * kappa)) * mB;
    if (n != 0) {
        const double ph = 4.0 * n * kappa;
        A *= std::exp(Complex(0.0, -ph));
        B *= std::exp(Complex(0.0, ph));
    }
    const double inv_a = 1.0 / scale.a();
    return {A * inv_a, B * inv_a, n};
}

double kummer_consistency(double Omega, double kappa) {
    check_args(Omega, kappa);
    const double pref = prefactor(Omega, kappa);
    const Complex B = coeffs(Omega, kappa, 0).B;
    const Complex alt = pref * std::exp(Complex(0.0, 2.0 * kappa)) *
                        specfun::kummer_m(Complex(1.0, -Omega), 2.0, Complex(0.0, -4.0 * kappa));
    return std::abs(B + alt) / std::abs(B);
}

AsymptoticParts asymptotic_parts(double Omega, double kappa, bool want_A) {
    check_args(Omega, kappa);
    return parts_log(Omega, std::log(kappa), want_A);
}

KappaIntegral smeared_square(const WavepacketSpec& packet, bool want_A, double tol, const KappaOptions& opt) {
    packet.validate();
    if (packet.host != Host::diamond) throw std::invalid_argument("smeared_square: packet must be diamond-hosted");
    if (!(tol > 0.0)) throw std::invalid_argument("smeared_square: tol must be > 0");
    if (!(opt.kappa_split > 1.0) || !(opt.kappa_max > opt.kappa_split))
        throw std::invalid_argument("smeared_square: need 1 < kappa_split < kappa_max");
    const Smearer sm(packet);
    const double K = opt.kappa_split;

    KappaIntegral out;
    out.kappa_split = K;

    // Near region, exact coefficients; the integrand beats at e^{4iK}.
    std::vector<double> bp{0.0, 1e-8, 1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0};
    for (double k = 2.0; k < K; k *= 2.0) bp.push_back(k);
    bp.push_back(K);
    quad::Options qn;
    qn.rel_tol = 0.05 * tol;
    qn.abs_tol = 1e-30;
    qn.frequency = [](double) { return 4.0; };
    const quad::Result rn = quad::adaptive([&](double k) { return Complex(exact_square(sm, k, want_A)); }, bp, qn);
    if (!rn.converged) throw ConvergenceError("smeared_square: near-region quadrature did not converge");
    out.near = rn.value.real();
    double err = rn.error;

    // Interference beyond K, by parts: \int_K h e^{4ik} = e^{4iK}(i h/4 - h'/16 - i h''/64)
    auto h_at = [&](double k) {
        const SmearedParts sp = smeared_parts(sm, std::log(k), want_A);
        return sp.plus * std::conj(sp.minus) / k;
    };
    {
        const double dk = 0.01 * K;
        const Complex h0 = h_at(K), hp = h_at(K + dk), hm = h_at(K - dk);
        const Complex d1 = (hp - hm) / (2.0 * dk), d2 = (hp - 2.0 * h0 + hm) / (dk * dk);
        const Complex e = std::exp(Complex(0.0, 4.0 * K));
        const Complex v = e * (kI * h0 / 4.0 - d1 / 16.0 - kI * d2 / 64.0);
        out.cross = 2.0 * v.real();
        err += std::abs(h0) / (256.0 * K * K * K) + 1e-3 * std::abs(d2) / 64.0;
    }

    // Far region on u = log kappa, octave by octave.
    auto far_integrand = [&](double u) {
        const SmearedParts sp = smeared_parts(sm, u, want_A);
        return Complex(std::norm(sp.plus) + std::norm(sp.minus));
    };
    const double umax = std::log(opt.kappa_max);
    const double step = std::log(2.0);
    double u = std::log(K), far = 0.0, prev = -1.0, tail = -1.0;
    quad::Options qf;
    qf.abs_tol = 1e-30;
    qf.rel_tol = 1e-3 * tol;
    for (;;) {
        if (u >= umax) break;
        const double un = std::min(umax, u + step);
        const quad::Result r = quad::adaptive(far_integrand, u, un, qf);
        const double c = r.value.real();
        far += c;
        err += r.error;
        u = un;
        const double total = out.near + out.cross + far;
        if (prev >= 0.0 && c < prev && std::abs(c) < 0.1 * tol * std::abs(total)) {
            const double ratio = c / prev;
            tail = c * ratio / (1.0 - ratio);
            break;
        }
        prev = c;
    }
    if (tail < 0.0) throw TailBoundError("smeared_square: integrand has not decayed by kappa_max");
    out.far = far;
    out.tail_bound = tail;
    out.kappa_cut = std::exp(u);
    out.value = out.near + out.cross + out.far + out.tail_bound;
    out.est_error = err + tail;
    return out;
}

KappaIntegral thermal_occupation(const WavepacketSpec& packet, const geometry::DiamondScale& scale, double kappa_max,
                                 double tol) {
    (void)scale;  // occupations are dimensionless
    KappaOptions opt;
    opt.kappa_max = kappa_max;
    return smeared_square(packet, false, tol, opt);
}

KappaIntegral completeness_check(const WavepacketSpec& packet, const geometry::DiamondScale& scale, double kappa_max,
                                 double tol) {
    (void)scale;
    KappaOptions opt;
    opt.kappa_max = kappa_max;
    const KappaIntegral a = smeared_square(packet, true, tol, opt);
    const KappaIntegral b = smeared_square(packet, false, tol, opt);
    KappaIntegral out = a;
    out.value = a.value - b.value;
    out.near = a.near - b.near;
    out.far = a.far - b.far;
    out.cross = a.cross - b.cross;
    out.tail_bound = a.tail_bound + b.tail_bound;
    out.est_error = a.est_error + b.est_error;
    out.kappa_cut = std::max(a.kappa_cut, b.kappa_cut);
    return out;
}

double planck(double Omega) { return 1.0 / std::expm1(2.0 * kPi * Omega); }

double fit_inverse_temperature(std::span<const std::pair<double, double>> omega_nbar) {
    if (omega_nbar.empty()) throw std::invalid_argument("fit_inverse_temperature: empty input");
    double sxy = 0.0, sxx = 0.0;
    for (auto [w, nb] : omega_nbar) {
        if (!(w > 0.0) || !(nb > 0.0)) throw std::invalid_argument("fit_inverse_temperature: need w > 0, nbar > 0");
        const double y = std::log1p(1.0 / nb);
        sxy += w * y;
        sxx += w * w;
    }
    return sxy / sxx;
}

} // namespace diamond::bogoliubov
