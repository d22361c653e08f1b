// specfun.cpp: Lanczos Gamma, Kummer M via series / MPFR series / asymptotics

#include "diamond/specfun.hpp"

#include "diamond/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

namespace diamond::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// Godfrey's Lanczos coefficients, g = 607/128, n = 15.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

bool is_nonpositive_integer(Complex z) {
    if (z.imag() != 0.0 || z.real() > 0.0) return false;
    return z.real() == std::nearbyint(z.real());
}

// log sin(pi z), stable for large |Im z|.
Complex log_sin_pi(Complex z) {
    const Complex i(0.0, 1.0);
    const double y = z.imag();
    if (std::abs(y) < 20.0) return std::log(std::sin(kPi * z));
    if (y > 0.0) {
        // sin(pi z) = (e^{-i pi z}/(-2i)) (1 - e^{2 i pi z})
        return -i * kPi * z - std::log(Complex(0.0, -2.0)) + std::log(1.0 - std::exp(2.0 * i * kPi * z));
    }
    return i * kPi * z - std::log(Complex(0.0, 2.0)) + std::log(1.0 - std::exp(-2.0 * i * kPi * z));
}

Complex log_gamma_right(Complex z) {
    // Re z >= 1/2
    const Complex w = z - 1.0;
    Complex series = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (w + static_cast<double>(k));
    const Complex t = w + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (w + 0.5) * std::log(t) - t + std::log(series);
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Neumaier-compensated complex accumulator.
struct CompensatedSum {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    static void add(double& s, double& c, double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x)) c += (s - t) + x;
        else c += (x - t) + s;
        s = t;
    }
    void add(Complex x) {
        add(re, cre, x.real());
        add(im, cim, x.imag());
    }
    Complex value() const { return {re + cre, im + cim}; }
};

struct SeriesOutcome {
    Complex value;
    double rel_error;
    int bits;
};

SeriesOutcome series_double(Complex a, Complex b, Complex z) {
    CompensatedSum sum;
    Complex term = 1.0;
    double max_term = 1.0;
    sum.add(term);
    int k = 0;
    for (; k < 200000; ++k) {
        term *= (a + double(k)) * z / ((b + double(k)) * double(k + 1));
        sum.add(term);
        const double at = std::abs(term);
        max_term = std::max(max_term, at);
        if (at < 1e-18 * std::abs(sum.value()) && std::abs(z) < 0.5 * (k + 1)) break;
        if (at == 0.0) break;
    }
    const Complex s = sum.value();
    const double rel = DBL_EPSILON * max_term * std::sqrt(double(k + 2)) / std::max(std::abs(s), DBL_MIN);
    return {s, rel, 53};
}

// Minimal RAII complex number over MPFR at a fixed precision.
class MpComplex {
public:
    explicit MpComplex(mpfr_prec_t p) {
        mpfr_init2(re_, p);
        mpfr_init2(im_, p);
        mpfr_set_zero(re_, 1);
        mpfr_set_zero(im_, 1);
    }
    ~MpComplex() {
        mpfr_clear(re_);
        mpfr_clear(im_);
    }
    MpComplex(const MpComplex&) = delete;
    MpComplex& operator=(const MpComplex&) = delete;

    void set(Complex z) {
        mpfr_set_d(re_, z.real(), MPFR_RNDN);
        mpfr_set_d(im_, z.imag(), MPFR_RNDN);
    }
    // this = (a + k) exactly, with a given in double
    void set_shifted(Complex a, long k) {
        set(a);
        mpfr_add_si(re_, re_, k, MPFR_RNDN);
    }
    Complex get() const { return {mpfr_get_d(re_, MPFR_RNDN), mpfr_get_d(im_, MPFR_RNDN)}; }

    // log2 of max(|re|, |im|); very negative for zero
    long magnitude_exp() const {
        long e = -1000000;
        if (!mpfr_zero_p(re_)) e = std::max<long>(e, mpfr_get_exp(re_));
        if (!mpfr_zero_p(im_)) e = std::max<long>(e, mpfr_get_exp(im_));
        return e;
    }

    // this *= x, using two scratch values
    void mul(const MpComplex& x, mpfr_t s1, mpfr_t s2) {
        mpfr_mul(s1, re_, x.re_, MPFR_RNDN);
        mpfr_mul(s2, im_, x.im_, MPFR_RNDN);
        mpfr_sub(s1, s1, s2, MPFR_RNDN);  // new re
        mpfr_mul(s2, re_, x.im_, MPFR_RNDN);
        mpfr_fma(im_, im_, x.re_, s2, MPFR_RNDN);
        mpfr_swap(re_, s1);
    }
    // this /= x
    void div(const MpComplex& x, mpfr_t s1, mpfr_t s2, mpfr_t s3) {
        mpfr_sqr(s3, x.re_, MPFR_RNDN);
        mpfr_fma(s3, x.im_, x.im_, s3, MPFR_RNDN);  // |x|^2
        mpfr_mul(s1, re_, x.re_, MPFR_RNDN);
        mpfr_fma(s1, im_, x.im_, s1, MPFR_RNDN);    // re*xr + im*xi
        mpfr_mul(s2, im_, x.re_, MPFR_RNDN);
        mpfr_mul(im_, re_, x.im_, MPFR_RNDN);
        mpfr_sub(im_, s2, im_, MPFR_RNDN);           // im*xr - re*xi
        mpfr_div(im_, im_, s3, MPFR_RNDN);
        mpfr_div(re_, s1, s3, MPFR_RNDN);
    }
    void div_si(long k) {
        mpfr_div_si(re_, re_, k, MPFR_RNDN);
        mpfr_div_si(im_, im_, k, MPFR_RNDN);
    }
    void add(const MpComplex& x) {
        mpfr_add(re_, re_, x.re_, MPFR_RNDN);
        mpfr_add(im_, im_, x.im_, MPFR_RNDN);
    }

private:
    mpfr_t re_, im_;
};

struct MpScratch {
    explicit MpScratch(mpfr_prec_t p) {
        mpfr_inits2(p, s1, s2, s3, static_cast<mpfr_ptr>(nullptr));
    }
    ~MpScratch() { mpfr_clears(s1, s2, s3, static_cast<mpfr_ptr>(nullptr)); }
    MpScratch(const MpScratch&) = delete;
    MpScratch& operator=(const MpScratch&) = delete;
    mpfr_t s1, s2, s3;
};

// Sum the series at `bits` of precision; returns value, log2 of the largest
// term, log2 |sum| and the number of terms.
struct MpSum {
    Complex value;
    long max_exp;
    long sum_exp;
    long terms;
};

MpSum series_mpfr_at(Complex a, Complex b, Complex z, mpfr_prec_t bits) {
    MpComplex term(bits), sum(bits), zz(bits), num(bits), den(bits);
    MpScratch s(bits);
    term.set(1.0);
    sum.set(1.0);
    zz.set(z);
    long max_exp = term.magnitude_exp();
    const double az = std::abs(z);
    long k = 0;
    for (; k < 2000000; ++k) {
        num.set_shifted(a, k);
        den.set_shifted(b, k);
        term.mul(num, s.s1, s.s2);
        term.mul(zz, s.s1, s.s2);
        term.div(den, s.s1, s.s2, s.s3);
        term.div_si(k + 1);
        sum.add(term);
        const long te = term.magnitude_exp();
        max_exp = std::max(max_exp, te);
        if (te < -1000000 + 10) break;  // exact zero: terminating series
        if (static_cast<double>(k + 1) > 2.0 * az + std::abs(a) + 8.0 &&
            te < sum.magnitude_exp() - static_cast<long>(bits) - 8)
            break;
    }
    return {sum.get(), max_exp, sum.magnitude_exp(), k + 1};
}

SeriesOutcome series_mpfr(Complex a, Complex b, Complex z) {
    // Estimate the dominant term magnitude in double logs to seed the precision.
    double log_term = 0.0, log_max = 0.0;
    const double az = std::abs(z);
    const double la = std::log(std::max(az, DBL_MIN));
    for (long k = 0; k < 2000000; ++k) {
        log_term += std::log(std::abs(a + double(k))) + la - std::log(std::abs(b + double(k))) - std::log(double(k + 1));
        log_max = std::max(log_max, log_term);
        if (static_cast<double>(k) > 2.0 * az + std::abs(a) + 8.0 && log_term < log_max - 60.0) break;
    }
    long bits = static_cast<long>(log_max / std::log(2.0)) + 53 + 64;
    for (int attempt = 0; attempt < 4; ++attempt) {
        if (bits > 65536) break;
        const MpSum r = series_mpfr_at(a, b, z, static_cast<mpfr_prec_t>(bits));
        const long lost = r.max_exp - r.sum_exp;
        const double log2_terms = std::log2(static_cast<double>(r.terms) + 1.0);
        const double margin = static_cast<double>(bits - lost) - log2_terms;
        if (margin >= 60.0) {
            return {r.value, std::max(std::ldexp(1.0, -static_cast<int>(margin)), DBL_EPSILON), static_cast<int>(bits)};
        }
        bits = lost + static_cast<long>(log2_terms) + 53 + 64;
    }
    throw DomainError("kummer_m: required working precision exceeds 65536 bits");
}

struct AsymptoticOutcome {
    Complex value;
    double rel_error;
};

// One sector: prefactor (in log form) times the optimally truncated sum of
// prod (p1+s)(p2+s)/((s+1) w) terms.
struct Sector {
    Complex sum;
    double omitted;   // |first omitted term| relative to the leading 1
};

Sector asymptotic_sector(Complex p1, Complex p2, Complex w) {
    CompensatedSum sum;
    Complex term = 1.0;
    sum.add(term);
    double prev = 1.0;
    for (int s = 0; s < 600; ++s) {
        const Complex next = term * (p1 + double(s)) * (p2 + double(s)) / (double(s + 1) * w);
        const double an = std::abs(next);
        if (an == 0.0) return {sum.value(), 0.0};
        if (an > prev) return {sum.value(), prev};  // divergence begins
        if (an < 1e-17 * std::abs(sum.value())) {
            sum.add(next);
            return {sum.value(), an};
        }
        sum.add(next);
        term = next;
        prev = an;
    }
    return {sum.value(), prev};
}

AsymptoticOutcome asymptotic(Complex a, Complex b, Complex z) {
    const Complex lz = std::log(z);
    const Complex lmz = std::log(-z);
    Complex total = 0.0;
    double err = 0.0;
    // e^z z^(a-b) / Gamma(a) * sum (1-a)_s (b-a)_s / (s! z^s)
    if (!is_nonpositive_integer(a)) {
        const Complex lp = z + (a - b) * lz - log_gamma(a);
        if (lp.real() > 700.0) throw OverflowError("kummer_m: asymptotic sector overflow");
        const Complex pref = std::exp(lp);
        const Sector s = asymptotic_sector(1.0 - a, b - a, z);
        total += pref * s.sum;
        err += std::abs(pref) * s.omitted;
    }
    // (-z)^(-a) / Gamma(b-a) * sum (a)_s (a-b+1)_s / (s! (-z)^s)
    if (!is_nonpositive_integer(b - a)) {
        const Complex lp = -a * lmz - log_gamma(b - a);
        if (lp.real() > 700.0) throw OverflowError("kummer_m: asymptotic sector overflow");
        const Complex pref = std::exp(lp);
        const Sector s = asymptotic_sector(a, a - b + 1.0, -z);
        total += pref * s.sum;
        err += std::abs(pref) * s.omitted;
    }
    const Complex gb = gamma(b);
    total *= gb;
    err *= std::abs(gb);
    const double mag = std::abs(total);
    return {total, mag > 0.0 ? err / mag : INFINITY};
}

} // namespace

Complex log_gamma(Complex z) {
    if (!is_finite(z)) throw DomainError("log_gamma: non-finite argument");
    if (is_nonpositive_integer(z)) throw PoleError("gamma: pole at nonpositive integer " + std::to_string(z.real()));
    if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
    return log_gamma_right(z);
}

Complex gamma(Complex z) {
    const Complex lg = log_gamma(z);
    if (lg.real() > std::log(DBL_MAX)) throw OverflowError("gamma: |Gamma(z)| exceeds double range");
    const Complex g = std::exp(lg);
    // Keep exactly real results real on the real axis.
    if (z.imag() == 0.0) return {g.real(), 0.0};
    return g;
}

Complex rgamma(Complex z) {
    if (is_nonpositive_integer(z)) return 0.0;
    const Complex lg = log_gamma(z);
    if (-lg.real() > std::log(DBL_MAX)) throw OverflowError("rgamma: |1/Gamma(z)| exceeds double range");
    return std::exp(-lg);
}

const char* to_string(KummerMethod m) noexcept {
    switch (m) {
    case KummerMethod::trivial: return "trivial";
    case KummerMethod::series_double: return "series_double";
    case KummerMethod::series_mpfr: return "series_mpfr";
    case KummerMethod::asymptotic: return "asymptotic";
    case KummerMethod::crossover: return "crossover";
    }
    return "unknown";
}

KummerResult kummer_m_detail(Complex a, Complex b, Complex z) {
    if (!is_finite(a) || !is_finite(b) || !is_finite(z)) throw DomainError("kummer_m: non-finite argument");
    if (is_nonpositive_integer(b)) throw DomainError("kummer_m: b is a nonpositive integer");
    if (z == Complex(0.0, 0.0)) return {1.0, 0.0, KummerMethod::trivial, 53};

    auto series = [&]() -> KummerResult {
        const SeriesOutcome d = series_double(a, b, z);
        if (d.rel_error <= 1e-13) return {d.value, d.rel_error, KummerMethod::series_double, 53};
        const SeriesOutcome m = series_mpfr(a, b, z);
        return {m.value, m.rel_error, KummerMethod::series_mpfr, m.bits};
    };

    if (std::abs(z) > 10.0) {
        const AsymptoticOutcome as = asymptotic(a, b, z);
        if (as.rel_error < 1e-13 && is_finite(as.value)) {
            return {as.value, std::max(as.rel_error, DBL_EPSILON), KummerMethod::asymptotic, 53};
        }
        if (as.rel_error < 1e-9) {
            KummerResult sr = series();
            const double diff = std::abs(sr.value - as.value) / std::abs(sr.value);
            if (!(diff <= 1e-9)) {
                throw ConvergenceError("kummer_m: series and asymptotic expansion disagree (" + std::to_string(diff) + ")");
            }
            sr.method = KummerMethod::crossover;
            return sr;
        }
    }
    KummerResult r = series();
    if (!is_finite(r.value)) throw OverflowError("kummer_m: result not representable");
    return r;
}

} // namespace diamond::specfun
