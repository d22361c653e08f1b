// correlations.hpp: vacuum second moments between diamond 0 and diamond n
//
// Sharp coefficients (a = 1), with the zeroth-diamond frequency W and the
// nth-diamond frequency Wp:
//
//   alpha(W, Wp, n) = <g^ex_W, g^(n)_Wp>,   beta(W, Wp, n) = <g^ex*_W, g^(n)_Wp>
//   <b^(0)_W b^(n)_Wp>     = alpha / (2 sinh pi W)
//   <b^(0)dag_W b^(n)_Wp>  = beta  / (2 sinh pi W)
//
// At n = 1 alpha has a simple pole on W = Wp; the smeared moments use the
// boundary value with Wp -> Wp - i0.

#pragma once

#include "diamond/geometry.hpp"
#include "diamond/wavepacket.hpp"

#include <complex>

namespace diamond::correlations {

using Complex = std::complex<double>;

struct CrossCoeff {
    Complex alpha;
    Complex beta;
    int n = 1;
    double Omega = 0.0;    // zeroth diamond
    double Omega_p = 0.0;  // nth diamond
    double est_error = 0.0;
};

enum class Method { analytic, numeric, asymptotic, smeared, thermal };
const char* to_string(Method m) noexcept;

struct SecondMoment {
    Complex bb;       // <b0 bn>
    Complex bdag_b;   // <b0^dag bn>
    Method method = Method::numeric;
    double est_error = 0.0;
    bool warning = false;  // outside the asymptotic comfort zone (5 <= n < 10)
};

// Closed forms at n = 1. alpha_adjacent throws PoleError at W == Wp.
Complex alpha_adjacent(double Omega, double Omega_p, const geometry::DiamondScale& scale = geometry::DiamondScale{});
Complex beta_adjacent(double Omega, double Omega_p, const geometry::DiamondScale& scale = geometry::DiamondScale{});
CrossCoeff alpha_beta_adjacent(double Omega, double Omega_p, const geometry::DiamondScale& scale = geometry::DiamondScale{});

// Residue of alpha at the n = 1 diagonal: alpha(W, W + x) ~ residue / x.
Complex alpha_adjacent_residue(double Omega);

// Quadrature of the defining KG products over diamond n. At n = 1 with
// |W - Wp| < 1e-3 only smeared answers are given: throws PoleError.
CrossCoeff alpha_beta_numeric(double Omega, double Omega_p, int n, double tol);

// Sharp moments: closed form at n = 1, quadrature otherwise.
SecondMoment cross_moments(double Omega, double Omega_p, int n, double tol);

// Large-n form: bb = sqrt(W Wp) / (4 n^2 sinh(pi W) sinh(pi Wp)), bdag_b = -bb.
// std::invalid_argument for n < 5; warning set for 5 <= n < 10.
SecondMoment asymptotic_moment(double Omega, double Omega_p, int n);

// Packet moments <b_p b_q>, <b_p^dag b_q> for diamond-hosted packets. Same
// diamond: thermal (bb = 0). Otherwise the sharp moments are integrated
// against both packets (the n = 1 pole by its boundary value).
SecondMoment smeared_moments(const WavepacketSpec& p, const WavepacketSpec& q, double tol);

// The same moments from the vacuum two-point function of the field
// derivative, <dPhi(V) dPhi(V')> = -1 / (4 pi (V - V')^2), integrated over
// both packet mode functions. Packets must sit in different diamonds.
SecondMoment direct_moments(const WavepacketSpec& p, const WavepacketSpec& q, double tol);

} // namespace diamond::correlations
