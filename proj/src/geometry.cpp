// geometry.cpp: diamond <-> Minkowski coordinate maps

#include "diamond/geometry.hpp"

#include "diamond/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <stdexcept>

namespace diamond::geometry {

namespace {

bool finite4(double a, double b, double c, double d) {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d);
}

// f(t,x,y,z;a) for an event that already carries y, z.
double conformal_f(double a, double t, double x, double r2) {
    return 1.0 - 0.25 * a * a * t * t + 0.25 * a * a * r2 - a * x;
}

} // namespace

DiamondScale::DiamondScale(double a) : a_(a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("DiamondScale: a must be finite and > 0");
}

double MinkowskiEvent::r() const { return std::sqrt(x * x + y * y + z * z); }

DiamondEvent to_diamond(const MinkowskiEvent& e, const DiamondScale& scale) {
    if (!finite4(e.t, e.x, e.y, e.z)) throw DomainError("to_diamond: non-finite event");
    const double a = scale.a();
    const double r = e.r();
    if (std::abs(e.t) + r >= 2.0 / a) throw DomainError("to_diamond: event outside the diamond |t| + r < 2/a");
    const double f = conformal_f(a, e.t, e.x, r * r);
    if (f <= 0.0) throw DomainError("to_diamond: singular map, f <= 0");
    const double g = 1.0 + 0.25 * a * a * e.t * e.t - 0.25 * a * a * r * r;
    DiamondEvent d;
    d.eta = std::atanh(a * e.t / g) / a;
    d.xi = std::log(std::sqrt(g * g - a * a * e.t * e.t) / f) / a;
    d.zeta = 2.0 * e.y / f;
    d.rho = 2.0 * e.z / f;
    return d;
}

MinkowskiEvent to_minkowski(const DiamondEvent& d, const DiamondScale& scale) {
    if (!finite4(d.eta, d.xi, d.zeta, d.rho)) throw DomainError("to_minkowski: non-finite event");
    const double a = scale.a();
    if (d.eta == 0.0 && d.xi == 0.0 && d.zeta == 0.0 && d.rho == 0.0) return {};

    // to_diamond sends (t, x, y, z) to p = (t, g, y, z) / f (times a), with
    // p_t = e^{a xi} sinh(a eta), p_x = e^{a xi} cosh(a eta), p_y = a zeta / 2,
    // p_z = a rho / 2. Eliminating x gives f = 4 / ((1 + p_x)^2 + p_y^2 + p_z^2 - p_t^2).
    const double ex = std::exp(a * d.xi);
    const double pt = ex * std::sinh(a * d.eta), px = ex * std::cosh(a * d.eta);
    const double py = 0.5 * a * d.zeta, pz = 0.5 * a * d.rho;
    const double den = (1.0 + px) * (1.0 + px) + py * py + pz * pz - pt * pt;
    if (!(den > 0.0) || !std::isfinite(den)) throw DomainError("to_minkowski: event has no interior preimage");
    const double f = 4.0 / den;
    const MinkowskiEvent e{pt * f / a, (2.0 - f * (1.0 + px)) / a, py * f / a, pz * f / a};

    const DiamondEvent back = to_diamond(e, scale);
    const double res = std::max({std::abs(back.eta - d.eta), std::abs(back.xi - d.xi), std::abs(back.zeta - d.zeta),
                                 std::abs(back.rho - d.rho)});
    if (!(res <= 1e-10 / a * std::max(1.0, std::abs(a * d.eta) + std::abs(a * d.xi))))
        throw ConvergenceError("to_minkowski: inverse residual " + std::to_string(res) + " above 1e-10");
    return e;
}

double line_element(const DiamondEvent& d, const DiamondEvent& dd, const DiamondScale& scale) {
    if (!finite4(d.eta, d.xi, d.zeta, d.rho) || !finite4(dd.eta, dd.xi, dd.zeta, dd.rho))
        throw std::invalid_argument("line_element: non-finite input");
    const double a = scale.a();
    const double tr2 = d.zeta * d.zeta + d.rho * d.rho;
    const double conf = std::cosh(a * d.eta) + std::cosh(a * d.xi) + 0.125 * a * a * std::exp(-a * d.xi) * tr2;
    const double num = 4.0 * (dd.eta * dd.eta - dd.xi * dd.xi) -
                       std::exp(-2.0 * a * d.xi) * (dd.zeta * dd.zeta + dd.rho * dd.rho);
    return num / (conf * conf);
}

double worldline_clock(double eta, const DiamondScale& scale) {
    return 2.0 / scale.a() * std::tanh(0.5 * scale.a() * eta);
}

double worldline_rate(double eta, const DiamondScale& scale) {
    const double c = std::cosh(0.5 * scale.a() * eta);
    return 1.0 / (c * c);
}

NullCoordPair null_map(double v, const DiamondScale& scale) {
    if (!std::isfinite(v)) throw std::invalid_argument("null_map: non-finite v");
    const double a = scale.a();
    const double c = std::cosh(0.5 * a * v);
    return {2.0 / a * std::tanh(0.5 * a * v), v, 1.0 / (c * c)};
}

double null_inverse(double V, const DiamondScale& scale) {
    const double a = scale.a();
    if (!(std::abs(a * V) < 2.0)) throw DomainError("null_inverse: |V| must be < 2/a");
    return 2.0 / a * std::atanh(0.5 * a * V);
}

} // namespace diamond::geometry
