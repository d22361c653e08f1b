// correlations.cpp: cross-diamond vacuum moments

#include "diamond/correlations.hpp"

#include "diamond/errors.hpp"
#include "diamond/modes.hpp"
#include "diamond/quadrature.hpp"
#include "diamond/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace diamond::correlations {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

void check_freq(double w, const char* who) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument(std::string(who) + ": frequencies must be finite and > 0");
}

// alpha(W, Wp) * (Wp - W) at n = 1; smooth across the diagonal
Complex alpha_adjacent_regular(double W, double Wp) {
    const double x = Wp - W;
    const Complex pre = std::exp(Complex(0.0, (W - Wp) * std::log(2.0))) / (2.0 * kPi) * std::sqrt(W / Wp) *
                        specfun::gamma(Complex(1.0, -Wp)) * specfun::rgamma(Complex(1.0, -W));
    return pre * specfun::gamma(Complex(1.0, x)) / kI;
}

double occupation(double w) { return 1.0 / std::expm1(2.0 * kPi * w); }

SecondMoment swap_result(const SecondMoment& m) {
    SecondMoment out = m;
    out.bdag_b = std::conj(m.bdag_b);
    return out;
}

modes::Packet mode_packet(const WavepacketSpec& s) {
    modes::Packet p;
    p.family = modes::Family::diamond;
    p.n = s.n;
    p.center = s.omega0;
    p.sigma = s.sigma;
    p.v0 = s.v0;
    return p;
}

void check_diamond(const WavepacketSpec& s, const char* who) {
    s.validate();
    if (s.host != Host::diamond) throw std::invalid_argument(std::string(who) + ": packets must be diamond-hosted");
}

} // namespace

const char* to_string(Method m) noexcept {
    switch (m) {
    case Method::analytic: return "analytic";
    case Method::numeric: return "numeric";
    case Method::asymptotic: return "asymptotic";
    case Method::smeared: return "smeared";
    case Method::thermal: return "thermal";
    }
    return "?";
}

Complex alpha_adjacent(double Omega, double Omega_p, const geometry::DiamondScale& scale) {
    check_freq(Omega, "alpha_adjacent");
    check_freq(Omega_p, "alpha_adjacent");
    if (Omega == Omega_p) throw PoleError("alpha_adjacent: alpha is divergent on the diagonal W = Wp");
    const Complex v = std::exp(Complex(0.0, (Omega - Omega_p) * std::log(2.0))) / (2.0 * kPi) *
                      std::sqrt(Omega / Omega_p) * specfun::gamma(Complex(1.0, -Omega_p)) *
                      specfun::gamma(Complex(0.0, Omega_p - Omega)) * specfun::rgamma(Complex(1.0, -Omega));
    return v / scale.a();
}

Complex beta_adjacent(double Omega, double Omega_p, const geometry::DiamondScale& scale) {
    check_freq(Omega, "beta_adjacent");
    check_freq(Omega_p, "beta_adjacent");
    const Complex v = -std::exp(Complex(0.0, -(Omega + Omega_p) * std::log(2.0))) / (2.0 * kPi) *
                      std::sqrt(Omega / Omega_p) * specfun::gamma(Complex(1.0, -Omega_p)) *
                      specfun::gamma(Complex(0.0, Omega_p + Omega)) * specfun::rgamma(Complex(1.0, Omega));
    return v / scale.a();
}

CrossCoeff alpha_beta_adjacent(double Omega, double Omega_p, const geometry::DiamondScale& scale) {
    CrossCoeff c;
    c.alpha = alpha_adjacent(Omega, Omega_p, scale);
    c.beta = beta_adjacent(Omega, Omega_p, scale);
    c.n = 1;
    c.Omega = Omega;
    c.Omega_p = Omega_p;
    return c;
}

Complex alpha_adjacent_residue(double Omega) {
    check_freq(Omega, "alpha_adjacent_residue");
    return alpha_adjacent_regular(Omega, Omega);
}

CrossCoeff alpha_beta_numeric(double Omega, double Omega_p, int n, double tol) {
    check_freq(Omega, "alpha_beta_numeric");
    check_freq(Omega_p, "alpha_beta_numeric");
    if (n < 1) throw std::invalid_argument("alpha_beta_numeric: n must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("alpha_beta_numeric: tol must be > 0");
    if (n == 1 && std::abs(Omega - Omega_p) < 1e-3)
        throw PoleError("alpha_beta_numeric: n = 1 near the diagonal is only available smeared");
    const modes::DiamondMode g{n, Omega_p};
    const modes::KGProduct a = modes::sharp_diamond_product(g, modes::sharp(modes::ExteriorMode{Omega}), tol);
    const modes::KGProduct b = modes::sharp_diamond_product(g, modes::sharp(modes::ExteriorMode{Omega}, true), tol);
    CrossCoeff c;
    c.alpha = std::conj(a.value);
    c.beta = std::conj(b.value);
    c.n = n;
    c.Omega = Omega;
    c.Omega_p = Omega_p;
    c.est_error = std::max(a.est_error, b.est_error);
    return c;
}

SecondMoment cross_moments(double Omega, double Omega_p, int n, double tol) {
    SecondMoment m;
    CrossCoeff c;
    if (n == 1) {
        c = alpha_beta_adjacent(Omega, Omega_p);
        m.method = Method::analytic;
    } else {
        c = alpha_beta_numeric(Omega, Omega_p, n, tol);
        m.method = Method::numeric;
    }
    const double d = 2.0 * std::sinh(kPi * Omega);
    m.bb = c.alpha / d;
    m.bdag_b = c.beta / d;
    m.est_error = c.est_error / d;
    return m;
}

SecondMoment asymptotic_moment(double Omega, double Omega_p, int n) {
    check_freq(Omega, "asymptotic_moment");
    check_freq(Omega_p, "asymptotic_moment");
    if (n < 5) throw std::invalid_argument("asymptotic_moment: requires n >= 5");
    SecondMoment m;
    const double v = std::sqrt(Omega * Omega_p) / (4.0 * double(n) * n * std::sinh(kPi * Omega) * std::sinh(kPi * Omega_p));
    m.bb = v;
    m.bdag_b = -v;
    m.method = Method::asymptotic;
    m.warning = n < 10;
    return m;
}

SecondMoment smeared_moments(const WavepacketSpec& p, const WavepacketSpec& q, double tol) {
    check_diamond(p, "smeared_moments");
    check_diamond(q, "smeared_moments");
    if (!(tol > 0.0)) throw std::invalid_argument("smeared_moments: tol must be > 0");
    if (q.n < p.n) return swap_result(smeared_moments(q, p, tol));

    SecondMoment m;
    m.method = Method::smeared;
    const int n = q.n - p.n;

    if (n == 0) {
        // Thermal within one diamond: <b_p^dag b_q> = \int G_p* G_q nbar.
        const SmearNodes np = smear_nodes(p, 2.0 + std::abs(q.v0), true);
        Complex s = 0.0;
        for (std::size_t i = 0; i < np.omega.size(); ++i)
            s += np.weight[i] * packet_amplitude(q, np.omega[i]) * occupation(np.omega[i]);
        m.bb = 0.0;
        m.bdag_b = s;
        m.method = Method::thermal;
        return m;
    }

    const SmearNodes pb = smear_nodes(p, 6.0, false);  // G_p for <b b>
    const SmearNodes pd = smear_nodes(p, 6.0, true);   // G_p* for <b^dag b>
    const SmearNodes qq = smear_nodes(q, 6.0, false);

    if (n == 1) {
        // beta is regular: plain double quadrature.
        Complex bd = 0.0;
        for (std::size_t i = 0; i < pd.omega.size(); ++i) {
            const double w = pd.omega[i];
            Complex row = 0.0;
            for (std::size_t j = 0; j < qq.omega.size(); ++j) row += qq.weight[j] * beta_adjacent(w, qq.omega[j]);
            bd += pd.weight[i] * row / (2.0 * std::sinh(kPi * w));
        }
        // alpha = H / (x - i0), x = Wp - W: PV + i pi delta(x).
        auto phi = [&](double x) -> Complex {
            Complex s = 0.0;
            for (std::size_t i = 0; i < pb.omega.size(); ++i) {
                const double w = pb.omega[i];
                if (!(w + x > 0.0)) continue;
                s += pb.weight[i] * packet_amplitude(q, w + x) * alpha_adjacent_regular(w, w + x) /
                     (2.0 * std::sinh(kPi * w));
            }
            return s;
        };
        const double X = std::abs(q.omega0 - p.omega0) + 12.0 * (p.sigma + q.sigma);
        quad::Options qo;
        qo.abs_tol = 0.1 * tol;
        qo.rel_tol = 0.0;
        const quad::Result pv = quad::adaptive([&](double x) { return (phi(x) - phi(-x)) / x; }, 0.0, X, qo);
        if (!pv.converged) throw ConvergenceError("smeared_moments: principal-value quadrature did not converge");
        m.bb = pv.value + kI * kPi * phi(0.0);
        m.bdag_b = bd;
        m.est_error = pv.error;
        return m;
    }

    // n >= 2: sharp coefficients by quadrature on the node grid.
    Complex bb = 0.0, bd = 0.0;
    double err = 0.0;
    // Per-coefficient tolerance that keeps the summed error below tol; floored
    // where the coefficient quadrature stops converging.
    double l1p = 0.0, l1q = 0.0, wmin = pb.omega.front();
    for (std::size_t i = 0; i < pb.omega.size(); ++i) {
        l1p += std::abs(pb.weight[i]);
        wmin = std::min(wmin, pb.omega[i]);
    }
    for (const Complex& w : qq.weight) l1q += std::abs(w);
    const double ctol = std::max(1e-11, 0.5 * tol * 2.0 * std::sinh(kPi * wmin) / (l1p * l1q));
    for (std::size_t i = 0; i < pb.omega.size(); ++i) {
        const double w = pb.omega[i];  // pb and pd share nodes
        Complex rb = 0.0, rd = 0.0;
        for (std::size_t j = 0; j < qq.omega.size(); ++j) {
            const CrossCoeff c = alpha_beta_numeric(w, qq.omega[j], n, ctol);
            rb += qq.weight[j] * c.alpha;
            rd += qq.weight[j] * c.beta;
            err += std::abs(qq.weight[j]) * c.est_error * std::abs(pb.weight[i]) / (2.0 * std::sinh(kPi * w));
        }
        const double d = 2.0 * std::sinh(kPi * w);
        bb += pb.weight[i] * rb / d;
        bd += pd.weight[i] * rd / d;
    }
    m.bb = bb;
    m.bdag_b = bd;
    m.est_error = err;
    return m;
}

SecondMoment direct_moments(const WavepacketSpec& p, const WavepacketSpec& q, double tol) {
    check_diamond(p, "direct_moments");
    check_diamond(q, "direct_moments");
    if (p.n == q.n) throw std::invalid_argument("direct_moments: packets must sit in different diamonds");
    if (!(tol > 0.0)) throw std::invalid_argument("direct_moments: tol must be > 0");
    if (q.n < p.n) return swap_result(direct_moments(q, p, tol));
    const int gap = q.n - p.n - 1;

    const modes::Mode fp = modes::packet(mode_packet(p));
    const modes::Mode fq = modes::packet(mode_packet(q));
    const modes::Chart cp{modes::ChartKind::diamond, p.n}, cq{modes::ChartKind::diamond, q.n};
    const double reach = std::sqrt(std::log(10.0 / tol)) + 1.5;

    struct Grid {
        std::vector<double> s, w;
        std::vector<Complex> f;
    };
    auto build = [&](const WavepacketSpec& spec, const modes::Mode& m, const modes::Chart& c, int per_panel) {
        Grid g;
        const double lo = spec.v0 - reach / spec.sigma, hi = spec.v0 + reach / spec.sigma;
        const double width = std::min(2.0, 2.5 / (spec.omega0 + 12.0 * spec.sigma));
        const int panels = static_cast<int>(std::ceil((hi - lo) / width));
        const double h = (hi - lo) / panels;
        const quad::Rule& r = quad::gauss_legendre(per_panel);
        for (int k = 0; k < panels; ++k) {
            const double mid = lo + (k + 0.5) * h;
            for (int i = 0; i < per_panel; ++i) {
                const double s = mid + 0.5 * h * r.nodes[i];
                const double ch = std::cosh(0.5 * s);
                g.s.push_back(s);
                g.w.push_back(0.5 * h * r.weights[i] / (ch * ch));  // includes dV/ds
                g.f.push_back(modes::eval_in_chart(m, c, s).f);
            }
        }
        return g;
    };

    auto run = [&](int per_panel, Complex& bb, Complex& bd) {
        const Grid gp = build(p, fp, cp, per_panel);
        const Grid gq = build(q, fq, cq, per_panel);
        // distance V_q - V_p = 4 gap + 4/(1 + e^{-w}) + 4/(1 + e^{v})
        std::vector<double> dq(gq.s.size()), dp(gp.s.size());
        for (std::size_t j = 0; j < gq.s.size(); ++j) dq[j] = 4.0 / (1.0 + std::exp(-gq.s[j]));
        for (std::size_t i = 0; i < gp.s.size(); ++i) dp[i] = 4.0 * gap + 4.0 / (1.0 + std::exp(gp.s[i]));
        bb = 0.0;
        bd = 0.0;
        for (std::size_t i = 0; i < gp.s.size(); ++i) {
            Complex row = 0.0;
            for (std::size_t j = 0; j < gq.s.size(); ++j) {
                const double D = dp[i] + dq[j];
                row += (gq.w[j] / D) * std::conj(gq.f[j]) / D;
            }
            bb += gp.w[i] * std::conj(gp.f[i]) * row;
            bd += gp.w[i] * gp.f[i] * row;
        }
        bb /= kPi;
        bd /= -kPi;
    };

    Complex bb1, bd1, bb2, bd2;
    run(12, bb1, bd1);
    run(18, bb2, bd2);
    SecondMoment m;
    m.bb = bb2;
    m.bdag_b = bd2;
    m.method = Method::numeric;
    m.est_error = std::max(std::abs(bb2 - bb1), std::abs(bd2 - bd1));
    return m;
}

} // namespace diamond::correlations
