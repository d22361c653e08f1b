// detector.hpp: Unruh-DeWitt detector on the static diamond worldline
// (1+3 dimensions, massless scalar, coupling and monopole element set to 1).
//
//   D+(x, x')      = -1 / (4 pi^2 [(t - t' - i eps)^2 - |r - r'|^2])
//   scaled kernel  = D+(t(eta), t(eta')) / (cosh^2(a eta/2) cosh^2(a eta'/2)),
//                    t(eta) = (2/a) tanh(a eta / 2)
//   accelerated    = -(a^2 / 16 pi^2) / sinh^2(a dtau / 2)
//
// With the regulator applied in Minkowski time the two kernels agree exactly
// once the proper-time gap carries the transformed regulator:
//   sinh(a dtau/2) = sinh(a (eta - eta')/2) - i (a eps / 2) cosh(a eta/2) cosh(a eta'/2).

#pragma once

#include "diamond/geometry.hpp"

#include <complex>
#include <span>

namespace diamond::detector {

using Complex = std::complex<double>;

// std::invalid_argument unless eps > 0.
Complex wightman_minkowski(const geometry::MinkowskiEvent& x, const geometry::MinkowskiEvent& xp, double eps);

Complex scaled_integrand(double eta, double eta_p, double eps, const geometry::DiamondScale& scale = geometry::DiamondScale{});

// Accelerated-detector kernel at (possibly complex) proper-time gap dtau.
Complex accelerated_wightman(Complex dtau, const geometry::DiamondScale& scale = geometry::DiamondScale{});
// Same with the shift dtau -> tau - tau' - i eps.
Complex accelerated_wightman(double tau, double tau_p, double eps, const geometry::DiamondScale& scale = geometry::DiamondScale{});

// Proper-time gap carrying the Minkowski-time regulator (see above).
Complex matched_gap(double eta, double eta_p, double eps, const geometry::DiamondScale& scale = geometry::DiamondScale{});

struct IdentityCheck {
    double max_residual = 0.0;  // max |scaled - accelerated| / |accelerated|
    double worst_eta = 0.0, worst_eta_p = 0.0;
    int points = 0;
};

// grid x grid points on [lo, hi]^2, skipping |eta - eta'| < min_gap.
IdentityCheck identity_residual(int grid, double lo, double hi, double min_gap, double eps);

// E / (2 pi (e^{2 pi E} - 1)), valid for either sign of E (a = 1).
double thermal_rate(double E);

struct RateResult {
    double rate = 0.0;
    double rate_half_eps = 0.0;
    double est_error = 0.0;
    bool consistent = false;  // rates at eps and eps/2 agree to 2%
};

// Per-unit-time response through a Hann window cos^2(pi eta / T) of width T,
// normalized by \int w^2. E > 0. Throws ConvergenceError when the eps-halving
// check fails or a quadrature does not converge.
RateResult response_rate(double E, double eps, double T_window);

struct BalanceResult {
    double ratio = 0.0;      // rate(E) / rate(-E)
    double expected = 0.0;   // e^{-2 pi E}
    RateResult excitation;
    RateResult deexcitation;
};
BalanceResult detailed_balance_ratio(double E, double eps, double T_window);

// beta from log(rate(-E)/rate(E)) = beta E, least squares through the origin.
double fit_inverse_temperature(std::span<const std::pair<double, double>> energy_ratio);

namespace detail {
// Signed-energy windowed rate at one eps (no halving check).
double windowed_rate(double E, double eps, double T_window, double* est_error = nullptr);
} // namespace detail

} // namespace diamond::detector
