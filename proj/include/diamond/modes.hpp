// modes.hpp: (1+1)-D left-moving mode functions and the Klein-Gordon product
//
// Conventions (dimensionless, a = 1 unless a DiamondScale is passed):
//
//   u_k(V)      = e^{-ikV} / sqrt(4 pi k)                 Minkowski plane wave
//   g^(n)_w(V)  = g^(0)_w(V - 4n),  g^(0)_w = e^{-iwv}/sqrt(4 pi w),
//                 V = 2 tanh(v/2), supported on [4n-2, 4n+2]
//   g^ex_w(V)   = ((V/2+1)/(V/2-1))^{iw} / sqrt(4 pi w),  |V| > 2
//
//   <f, h> = -i \int dV (f dh*/dV - h* df/dV)     (linear in f, antilinear in h)
//
// Integrals are evaluated in a chart where the integrand is tame:
//   diamond n : V = 4n + 2 tanh(s/2)     (s = diamond null coordinate v)
//   exterior  : V = 2 coth(s/2)          (s = exterior rapidity, e^s = (V/2+1)/(V/2-1))
//   global    : V = s
// Derivatives of every mode are analytic in each chart.

#pragma once

#include "diamond/geometry.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <variant>

namespace diamond::modes {

using Complex = std::complex<double>;

struct PlaneWave {
    double k;
};
struct DiamondMode {
    int n;
    double omega;
};
struct ExteriorMode {
    double omega;
};

using ModeLabel = std::variant<PlaneWave, DiamondMode, ExteriorMode>;

enum class Family { plane, diamond, exterior };

// Gaussian superposition F = \int dw W(w) mode_w with
// W(w) = (2 pi sigma^2)^{-1/4} exp(-(w - center)^2 / (4 sigma^2)) e^{+i w v0},
// so the annihilator of F is \int dw G(w) b_w with G = W* (the usual packet).
// v0 is measured in the family's own chart (v for diamonds, V for plane
// waves, the exterior rapidity for the exterior family).
struct Packet {
    Family family = Family::diamond;
    int n = 0;              // diamond index, diamond family only
    double center = 1.0;
    double sigma = 0.02;
    double v0 = 0.0;
};

struct Mode {
    std::variant<PlaneWave, DiamondMode, ExteriorMode, Packet> kind;
    bool conjugate = false;
};

inline Mode sharp(ModeLabel m, bool conj = false) {
    return std::visit([&](auto x) { return Mode{x, conj}; }, m);
}
inline Mode packet(Packet p, bool conj = false) { return Mode{p, conj}; }

// Raised when both arguments are sharp modes and smearing was not allowed.
class DistributionalInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ModeValue {
    Complex value;
    bool boundary = false;  // evaluated exactly on a null boundary (value 0)
};

// Mode function at Minkowski null coordinate V (physical units via scale).
ModeValue eval_mode(const ModeLabel& m, double V, const geometry::DiamondScale& scale = geometry::DiamondScale{});

enum class ChartKind { global, diamond, exterior };
struct Chart {
    ChartKind kind = ChartKind::global;
    int n = 0;
    double to_V(double s) const;
    // +1 where V increases with s, -1 otherwise (exterior chart)
    double orientation() const { return kind == ChartKind::exterior ? -1.0 : 1.0; }
};

struct ChartSample {
    Complex f;
    Complex df;  // d f / d s
};

// Mode value and chart derivative at chart coordinate s (conjugation applied).
ChartSample eval_in_chart(const Mode& m, const Chart& c, double s);

struct KGProduct {
    Complex value;
    double est_error = 0.0;
};

struct KGOptions {
    bool smear_sharp = true;     // wrap sharp modes into narrow packets
    double sharp_sigma = 0.02;   // bandwidth used for that wrapping
};

// <m1, m2> by adaptive quadrature with est_error <= tol.
// Throws ConvergenceError if tol is not reached, DistributionalInputError for
// two sharp inputs when smear_sharp is false.
KGProduct kg_product(const Mode& m1, const Mode& m2, double tol, const KGOptions& opt = {});

// <g^(n)_w, h> for a sharp diamond mode against a sharp mode h that is
// smooth across diamond n or has pure-phase asymptotics at its tips. The
// non-decaying tails are integrated analytically (Abel regularization), the
// remainder numerically. Throws PoleError when a tail frequency coincides
// with w (the distributional diagonal), DistributionalInputError when h is a
// mode of the same diamond.
KGProduct sharp_diamond_product(const DiamondMode& g, const Mode& h, double tol);

// Closed-form \int dw W1(w) W2*(w) over the real line (= <F1, F2> for two
// packets of one family in one chart).
Complex packet_overlap(const Packet& p1, const Packet& p2);

// log|R_n(s)| with R_n = ((n+1) e^s + n) / (n e^s + n - 1), n != 0: the
// exterior-mode ratio (V/2+1)/(V/2-1) evaluated in the diamond-n chart.
double exterior_log_ratio(int n, double s);
double exterior_log_ratio_slope(int n, double s);

} // namespace diamond::modes
