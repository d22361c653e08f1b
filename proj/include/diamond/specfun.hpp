// specfun.hpp: complex Gamma and Kummer's confluent hypergeometric function
//
// The closed forms for the diamond/Minkowski Bogoliubov coefficients and the
// adjacent-diamond correlators need
//
//   Gamma(z)            for complex z, moderate |Im z|
//   M(a, b, z) = 1F1    for a = 1 +/- i*Omega, b = 2 and z = +/- 4 i kappa
//
// Gamma uses a Lanczos approximation (Godfrey's g = 607/128 coefficient set)
// with reflection for Re z < 1/2. M combines three evaluators and reports
// which one produced the value:
//
//   series_double   Taylor series in double precision, accepted only when the
//                   measured cancellation (max term / |sum|) leaves >= 13 digits
//   series_mpfr     the same series in MPFR at a working precision chosen from
//                   the measured cancellation, re-run if it proves insufficient
//   asymptotic      large-|z| expansion, both sectors e^z z^(a-b) and (-z)^(-a),
//                   optimally truncated
//   crossover       asymptotic error estimate in (1e-13, 1e-9): the series is
//                   evaluated as well and must agree to 1e-9

#pragma once

#include <complex>

namespace diamond::specfun {

using Complex = std::complex<double>;

// Throws PoleError at z in {0, -1, -2, ...}, OverflowError if |Gamma(z)|
// exceeds the double range.
Complex gamma(Complex z);

// log Gamma(z); the imaginary part is the argument of Gamma(z) up to 2*pi.
Complex log_gamma(Complex z);

// 1/Gamma(z), exactly zero at the poles of Gamma.
Complex rgamma(Complex z);

enum class KummerMethod { trivial, series_double, series_mpfr, asymptotic, crossover };

const char* to_string(KummerMethod m) noexcept;

struct KummerResult {
    Complex value;
    double est_rel_error = 0.0;
    KummerMethod method = KummerMethod::trivial;
    int precision_bits = 53;
};

// Full diagnostic evaluation of M(a, b, z).
// Throws DomainError for b in {0, -1, ...} or non-finite input, and
// ConvergenceError if the crossover agreement check fails.
KummerResult kummer_m_detail(Complex a, Complex b, Complex z);

inline Complex kummer_m(Complex a, Complex b, Complex z) {
    return kummer_m_detail(a, b, z).value;
}

} // namespace diamond::specfun
