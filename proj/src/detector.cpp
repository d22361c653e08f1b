// detector.cpp: Wightman kernels and windowed response rates

#include "diamond/detector.hpp"

#include "diamond/errors.hpp"
#include "diamond/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace diamond::detector {

namespace {

constexpr double kPi = std::numbers::pi;

void check_eps(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("detector: eps must be finite and > 0");
}

// Hann window autocorrelation C(u) = \int w(x) w(x - u) dx, u >= 0
struct Hann {
    double T, k;
    explicit Hann(double t) : T(t), k(2.0 * kPi / t) {}
    double C(double u) const {
        u = std::abs(u);
        if (u >= T) return 0.0;
        return 0.25 * ((T - u) * (1.0 + 0.5 * std::cos(k * u)) + 1.5 * std::sin(k * u) / k);
    }
    double dC(double u) const {  // d/du C(|u|)
        const double s = u < 0.0 ? -1.0 : 1.0;
        u = std::abs(u);
        if (u >= T) return 0.0;
        return s * 0.25 * (-1.0 + std::cos(k * u) - 0.5 * (T - u) * k * std::sin(k * u));
    }
};

// 1/sinh^2(x/2) - 4/x^2 for complex x
Complex sinh2_remainder(Complex x) {
    if (std::abs(x) < 0.2) {
        const Complex x2 = x * x;
        // 4 * (-1/12 + x^2/240 - x^4/6048 + x^6/172800 - x^8 / 5322240)
        return 4.0 * (-1.0 / 12.0 + x2 * (1.0 / 240.0 + x2 * (-1.0 / 6048.0 + x2 * (1.0 / 172800.0 - x2 / 5322240.0))));
    }
    const Complex s = std::sinh(0.5 * x);
    return 1.0 / (s * s) - 4.0 / (x * x);
}

} // namespace

Complex wightman_minkowski(const geometry::MinkowskiEvent& x, const geometry::MinkowskiEvent& xp, double eps) {
    check_eps(eps);
    const Complex dt(x.t - xp.t, -eps);
    const double dx = x.x - xp.x, dy = x.y - xp.y, dz = x.z - xp.z;
    return -1.0 / (4.0 * kPi * kPi * (dt * dt - (dx * dx + dy * dy + dz * dz)));
}

Complex scaled_integrand(double eta, double eta_p, double eps, const geometry::DiamondScale& scale) {
    const double a = scale.a();
    const geometry::MinkowskiEvent x{geometry::worldline_clock(eta, scale), 0.0, 0.0, 0.0};
    const geometry::MinkowskiEvent xp{geometry::worldline_clock(eta_p, scale), 0.0, 0.0, 0.0};
    const double c1 = std::cosh(0.5 * a * eta), c2 = std::cosh(0.5 * a * eta_p);
    return wightman_minkowski(x, xp, eps) / (c1 * c1 * c2 * c2);
}

Complex accelerated_wightman(Complex dtau, const geometry::DiamondScale& scale) {
    const double a = scale.a();
    const Complex s = std::sinh(0.5 * a * dtau);
    return -(a * a / (16.0 * kPi * kPi)) / (s * s);
}

Complex accelerated_wightman(double tau, double tau_p, double eps, const geometry::DiamondScale& scale) {
    check_eps(eps);
    return accelerated_wightman(Complex(tau - tau_p, -eps), scale);
}

Complex matched_gap(double eta, double eta_p, double eps, const geometry::DiamondScale& scale) {
    check_eps(eps);
    const double a = scale.a();
    const Complex s = Complex(std::sinh(0.5 * a * (eta - eta_p)),
                              -0.5 * a * eps * std::cosh(0.5 * a * eta) * std::cosh(0.5 * a * eta_p));
    return 2.0 / a * std::asinh(s);
}

IdentityCheck identity_residual(int grid, double lo, double hi, double min_gap, double eps) {
    if (grid < 2 || !(hi > lo)) throw std::invalid_argument("identity_residual: need grid >= 2 and hi > lo");
    IdentityCheck out;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const double e1 = lo + (hi - lo) * i / (grid - 1);
            const double e2 = lo + (hi - lo) * j / (grid - 1);
            if (std::abs(e1 - e2) < min_gap) continue;
            const Complex lhs = scaled_integrand(e1, e2, eps);
            const Complex rhs = accelerated_wightman(matched_gap(e1, e2, eps));
            const double r = std::abs(lhs - rhs) / std::abs(rhs);
            ++out.points;
            if (r > out.max_residual) {
                out.max_residual = r;
                out.worst_eta = e1;
                out.worst_eta_p = e2;
            }
        }
    }
    return out;
}

double thermal_rate(double E) {
    if (E == 0.0) return 1.0 / (4.0 * kPi * kPi);
    return E / (2.0 * kPi * std::expm1(2.0 * kPi * E));
}

namespace detail {

double windowed_rate(double E, double eps, double T, double* est_error) {
    check_eps(eps);
    if (!(T > 0.0) || !std::isfinite(T) || !std::isfinite(E)) throw std::invalid_argument("windowed_rate: bad E or T_window");
    const Hann h(T);
    const double c0 = h.C(0.0);
    const double pref = 1.0 / (16.0 * kPi * kPi);

    // f = e^{-iE d} C(|d|); kernel = -pref [4/(d - i eps)^2 + remainder(d - i eps)].
    auto f = [&](double d) { return std::exp(Complex(0.0, -E * d)) * h.C(d); };
    auto g = [&](double d) { return std::exp(Complex(0.0, -E * d)) * (Complex(0.0, -E) * h.C(d) + h.dC(d)); };
    const Complex g0 = g(0.0);

    quad::Options qo;
    qo.abs_tol = 1e-14 * c0;
    qo.rel_tol = 0.0;
    qo.max_evals = 4'000'000;
    qo.frequency = [&](double) { return std::abs(E) + 1.0; };
    const double bp[3] = {-T, 0.0, T};
    const std::span<const double> bps(bp, 3);

    // \int f/(d - i eps)^2 = \int g/(d - i eps) (f vanishes at +-T)
    //                      = \int (g - g0)/(d - i eps) + g0 * 2i atan(T/eps)
    const quad::Result rs = quad::adaptive([&](double d) { return (g(d) - g0) / Complex(d, -eps); }, bps, qo);
    const Complex sing = rs.value + g0 * Complex(0.0, 2.0 * std::atan(T / eps));
    const quad::Result rr = quad::adaptive([&](double d) { return f(d) * sinh2_remainder(Complex(d, -eps)); }, bps, qo);
    if (!rs.converged || !rr.converged) throw ConvergenceError("windowed_rate: quadrature did not converge");

    const Complex total = -pref * (4.0 * sing + rr.value);
    if (est_error) *est_error = pref * (4.0 * rs.error + rr.error) / c0;
    return total.real() / c0;
}

} // namespace detail

RateResult response_rate(double E, double eps, double T_window) {
    if (!(E > 0.0)) throw std::invalid_argument("response_rate: E must be > 0");
    RateResult r;
    double e1 = 0.0, e2 = 0.0;
    r.rate = detail::windowed_rate(E, eps, T_window, &e1);
    r.rate_half_eps = detail::windowed_rate(E, 0.5 * eps, T_window, &e2);
    r.est_error = std::max(e1, e2);
    r.consistent = std::abs(r.rate - r.rate_half_eps) <= 0.02 * std::abs(r.rate_half_eps);
    if (!r.consistent)
        throw ConvergenceError("response_rate: eps and eps/2 disagree by more than 2% (" + std::to_string(r.rate) + " vs " +
                               std::to_string(r.rate_half_eps) + ")");
    return r;
}

BalanceResult detailed_balance_ratio(double E, double eps, double T_window) {
    if (!(E > 0.0)) throw std::invalid_argument("detailed_balance_ratio: E must be > 0");
    BalanceResult b;
    b.excitation = response_rate(E, eps, T_window);
    RateResult d;
    double e1 = 0.0, e2 = 0.0;
    d.rate = detail::windowed_rate(-E, eps, T_window, &e1);
    d.rate_half_eps = detail::windowed_rate(-E, 0.5 * eps, T_window, &e2);
    d.est_error = std::max(e1, e2);
    d.consistent = std::abs(d.rate - d.rate_half_eps) <= 0.02 * std::abs(d.rate_half_eps);
    if (!d.consistent) throw ConvergenceError("detailed_balance_ratio: de-excitation rate not eps-stable");
    b.deexcitation = d;
    b.ratio = b.excitation.rate / d.rate;
    b.expected = std::exp(-2.0 * kPi * E);
    return b;
}

double fit_inverse_temperature(std::span<const std::pair<double, double>> energy_ratio) {
    if (energy_ratio.empty()) throw std::invalid_argument("fit_inverse_temperature: empty input");
    double sxy = 0.0, sxx = 0.0;
    for (auto [E, r] : energy_ratio) {
        if (!(r > 0.0)) throw std::invalid_argument("fit_inverse_temperature: ratios must be > 0");
        sxy += E * (-std::log(r));
        sxx += E * E;
    }
    return sxy / sxx;
}

} // namespace diamond::detector
