// geometry.hpp: diamond coordinates, line element, static worldline, null map
//
// All coordinates are exchanged in units of 1/a ("dimensionless diamond
// units") once a DiamondScale is fixed; the scale argument lets callers work
// in physical units if they prefer.

#pragma once

#include <array>

namespace diamond::geometry {

// Inverse-size parameter a > 0. Half-width 2/a, static-observer lifetime 4/a.
class DiamondScale {
public:
    explicit DiamondScale(double a = 1.0);
    double a() const noexcept { return a_; }
    double half_size() const noexcept { return 2.0 / a_; }
    double lifetime() const noexcept { return 4.0 / a_; }

private:
    double a_;
};

struct MinkowskiEvent {
    double t = 0.0, x = 0.0, y = 0.0, z = 0.0;
    double r() const;
};

// (eta, xi, zeta, rho)
struct DiamondEvent {
    double eta = 0.0, xi = 0.0, zeta = 0.0, rho = 0.0;
};

struct NullCoordPair {
    double V;       // Minkowski null t + x, in (-2/a, 2/a)
    double v;       // diamond null eta + xi
    double dV_dv;   // sech^2(a v / 2)
};

// Throws DomainError when |t| + r >= 2/a or when f(t,x,y,z;a) <= 0.
DiamondEvent to_diamond(const MinkowskiEvent& e, const DiamondScale& scale);

// Closed-form inverse of to_diamond, checked by mapping back: ConvergenceError
// if a component misses by more than 1e-10 (units of 1/a, relative once
// |a eta| + |a xi| > 1). DomainError for points with no interior preimage.
MinkowskiEvent to_minkowski(const DiamondEvent& d, const DiamondScale& scale);

// ds^2 for a displacement dd at d.
double line_element(const DiamondEvent& d, const DiamondEvent& dd, const DiamondScale& scale);

// Static worldline r = 0, xi = 0: t = (2/a) tanh(a eta / 2).
double worldline_clock(double eta, const DiamondScale& scale);
double worldline_rate(double eta, const DiamondScale& scale);   // dt/deta

NullCoordPair null_map(double v, const DiamondScale& scale);
// Inverse: v = (2/a) artanh(a V / 2); DomainError unless |V| < 2/a.
double null_inverse(double V, const DiamondScale& scale);

} // namespace diamond::geometry
