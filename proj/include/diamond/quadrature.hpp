// quadrature.hpp: Gauss-Legendre rules and adaptive Gauss-Kronrod for complex integrands

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace diamond::quad {

using Complex = std::complex<double>;
using ComplexFn = std::function<Complex(double)>;

struct Rule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule; cached per n, thread-safe.
const Rule& gauss_legendre(int n);

// Fixed-order Gauss-Legendre on [lo, hi].
Complex fixed(const ComplexFn& f, double lo, double hi, int n);

struct Options {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    long max_evals = 4'000'000;
    // If set, initial panels are split so the local phase advance
    // |frequency(x)| * width stays below max_phase (radians) per panel.
    std::function<double(double)> frequency;
    double max_phase = 3.0;
};

struct Result {
    Complex value;
    double error = 0.0;
    long evals = 0;
    bool converged = false;
};

// Adaptive G10/K21 over consecutive intervals [b0,b1], [b1,b2], ...
// Panels are bisected by largest error; the final sum runs in panel order so
// the result is deterministic.
Result adaptive(const ComplexFn& f, std::span<const double> breakpoints, const Options& opt = {});

inline Result adaptive(const ComplexFn& f, double lo, double hi, const Options& opt = {}) {
    const double bp[2] = {lo, hi};
    return adaptive(f, std::span<const double>(bp, 2), opt);
}

} // namespace diamond::quad
