// bogoliubov.hpp: diamond-mode / plane-wave Bogoliubov coefficients and
// the smeared occupation and normalization integrals over plane waves.
//
//   g^(n)_w = \int_0^inf dk (A u_k + B u_k*),  A = <g, u_k>,  B = <g, u_k*>
//
//   A^(0) = 2 sqrt(W K)/sinh(pi W) e^{+2iK} M(1+iW, 2, -4iK) / a
//   B^(0) = -2 sqrt(W K)/sinh(pi W) e^{-2iK} M(1+iW, 2, +4iK) / a
//   A^(n) = e^{-4inK} A^(0),  B^(n) = e^{+4inK} B^(0)
//
// with W = w/a, K = k/a. Both A^(0) and B^(0) are real.

#pragma once

#include "diamond/geometry.hpp"
#include "diamond/wavepacket.hpp"

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace diamond::bogoliubov {

using Complex = std::complex<double>;

struct BogCoeffPair {
    Complex A;
    Complex B;
    int n = 0;
};

// Throws std::invalid_argument unless Omega, kappa are finite and > 0.
BogCoeffPair coeffs(double Omega, double kappa, int n, const geometry::DiamondScale& scale = geometry::DiamondScale{});

// |B + c e^{2iK} M(1-iW, 2, -4iK)| / |B| with c the prefactor of B above:
// checks B against its Kummer-transformed form.
double kummer_consistency(double Omega, double kappa);

// Large-kappa split X = e^{+2iK} plus + e^{-2iK} minus (X = A or B, a = 1,
// diamond 0) from the two-sector asymptotic expansion of M. Both parts are
// returned multiplied by sqrt(kappa), so they stay O(1) for any kappa.
struct AsymptoticParts {
    Complex plus;
    Complex minus;
};
AsymptoticParts asymptotic_parts(double Omega, double kappa, bool want_A);

struct KappaIntegral {
    double value = 0.0;
    double est_error = 0.0;
    double near = 0.0;        // \int_0^K direct
    double far = 0.0;         // \int_K^kappa_cut, non-oscillating parts
    double cross = 0.0;       // oscillating interference beyond K (by parts)
    double tail_bound = 0.0;  // extrapolated remainder beyond kappa_cut
    double kappa_split = 0.0;
    double kappa_cut = 0.0;
};

struct KappaOptions {
    double kappa_split = 64.0;
    double kappa_max = 1e300;
};

// <0| b^dag b |0> = \int dk |\int dw G*(w) B^(n)_{wk}|^2 for a diamond-hosted
// packet. tol is relative to the result. Throws TailBoundError if the
// integrand has not died out by kappa_max.
KappaIntegral thermal_occupation(const WavepacketSpec& packet, const geometry::DiamondScale& scale,
                                 double kappa_max, double tol);

// \int dk (|A_smeared|^2 - |B_smeared|^2), expected 1.
KappaIntegral completeness_check(const WavepacketSpec& packet, const geometry::DiamondScale& scale,
                                 double kappa_max, double tol);

// Same integrals with explicit options.
KappaIntegral smeared_square(const WavepacketSpec& packet, bool want_A, double tol, const KappaOptions& opt);

// 1 / (e^{2 pi W} - 1)
double planck(double Omega);

// Least-squares beta through the origin of log(1 + 1/nbar) = beta * W.
double fit_inverse_temperature(std::span<const std::pair<double, double>> omega_nbar);

} // namespace diamond::bogoliubov
