// modes.cpp: mode functions, chart evaluation, KG products

#include "diamond/modes.hpp"

#include "diamond/errors.hpp"
#include "diamond/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace diamond::modes {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double norm_factor(double w) { return 1.0 / std::sqrt(4.0 * kPi * w); }

void check_freq(double w, const char* who) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument(std::string(who) + ": frequency must be finite and > 0");
}

// log|p e^s + q| for p, q of equal sign (either may vanish).
double log_lin_exp(double p, double q, double s) {
    const double ap = std::abs(p), aq = std::abs(q);
    if (ap == 0.0) return std::log(aq);
    if (aq == 0.0) return std::log(ap) + s;
    if (s > 0.0) return s + std::log(ap + aq * std::exp(-s));
    return std::log(aq + ap * std::exp(s));
}

// d/ds log|p e^s + q|
double log_lin_exp_slope(double p, double q, double s) {
    const double ap = std::abs(p), aq = std::abs(q);
    if (ap == 0.0) return 0.0;
    if (aq == 0.0) return 1.0;
    if (s > 0.0) return 1.0 / (1.0 + (aq / ap) * std::exp(-s));
    const double e = std::exp(s);
    return ap * e / (aq + ap * e);
}

// Asymptote log|p e^s + q| ~ slope * s + offset for s -> +inf (plus = true) or -inf.
void log_lin_exp_asym(double p, double q, bool plus, double& slope, double& offset) {
    const double ap = std::abs(p), aq = std::abs(q);
    if (plus) {
        if (ap > 0.0) { slope = 1.0; offset = std::log(ap); }
        else { slope = 0.0; offset = std::log(aq); }
    } else {
        if (aq > 0.0) { slope = 0.0; offset = std::log(aq); }
        else { slope = 1.0; offset = std::log(ap); }
    }
}

double sech2(double x) {
    const double c = std::cosh(x);
    return 1.0 / (c * c);
}

// dV/ds in a chart
double chart_jacobian(const Chart& c, double s) {
    switch (c.kind) {
    case ChartKind::global: return 1.0;
    case ChartKind::diamond: return sech2(0.5 * s);
    case ChartKind::exterior: {
        const double sh = std::sinh(0.5 * s);
        return -1.0 / (sh * sh);
    }
    }
    return 1.0;
}

// Phase of a sharp mode, written as w * phi(s); returns phi and dphi/ds.
// in_support is false where the mode vanishes identically.
struct PhaseData {
    double phi = 0.0;
    double dphi = 0.0;
    bool in_support = true;
};

PhaseData sharp_phase(Family fam, int n, const Chart& c, double s) {
    PhaseData p;
    switch (fam) {
    case Family::plane: {
        p.phi = -c.to_V(s);
        p.dphi = -chart_jacobian(c, s);
        return p;
    }
    case Family::diamond: {
        if (c.kind == ChartKind::diamond) {
            if (c.n != n) { p.in_support = false; return p; }
            p.phi = -s;
            p.dphi = -1.0;
            return p;
        }
        const double y = c.to_V(s) - 4.0 * n;
        if (!(std::abs(y) < 2.0)) { p.in_support = false; return p; }
        p.phi = -2.0 * std::atanh(0.5 * y);
        p.dphi = -chart_jacobian(c, s) / (1.0 - 0.25 * y * y);
        return p;
    }
    case Family::exterior: {
        if (c.kind == ChartKind::exterior) {
            p.phi = s;
            p.dphi = 1.0;
            return p;
        }
        if (c.kind == ChartKind::diamond) {
            if (c.n == 0) { p.in_support = false; return p; }
            p.phi = exterior_log_ratio(c.n, s);
            p.dphi = exterior_log_ratio_slope(c.n, s);
            return p;
        }
        const double V = s;
        if (!(std::abs(V) > 2.0)) { p.in_support = false; return p; }
        p.phi = std::log((0.5 * V + 1.0) / (0.5 * V - 1.0));
        p.dphi = 0.5 / (0.5 * V + 1.0) - 0.5 / (0.5 * V - 1.0);
        return p;
    }
    }
    return p;
}

ChartSample sharp_sample(Family fam, int n, double w, const Chart& c, double s) {
    const PhaseData p = sharp_phase(fam, n, c, s);
    if (!p.in_support) return {0.0, 0.0};
    const Complex f = std::exp(kI * (w * p.phi)) * norm_factor(w);
    return {f, kI * (w * p.dphi) * f};
}

struct FamilyRef {
    Family fam;
    int n;
    double w;
};

FamilyRef family_of(const PlaneWave& x) { return {Family::plane, 0, x.k}; }
FamilyRef family_of(const DiamondMode& x) { return {Family::diamond, x.n, x.omega}; }
FamilyRef family_of(const ExteriorMode& x) { return {Family::exterior, 0, x.omega}; }

void check_packet(const Packet& p) {
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw std::invalid_argument("Packet: sigma must be finite and > 0");
    if (!(p.center > 0.0) || !std::isfinite(p.center)) throw std::invalid_argument("Packet: center must be finite and > 0");
    if (!std::isfinite(p.v0)) throw std::invalid_argument("Packet: v0 must be finite");
}

ChartSample packet_sample(const Packet& pk, const Chart& c, double s) {
    const double half = 12.0 * pk.sigma;
    const double lo = pk.center - half, hi = pk.center + half;
    const double amp = std::pow(2.0 * kPi * pk.sigma * pk.sigma, -0.25);
    const PhaseData ph = sharp_phase(pk.family, pk.n, c, s);
    if (!ph.in_support) return {0.0, 0.0};

    const double rate = std::abs(ph.phi + pk.v0);
    const double span = lo > 0.0 ? half : hi;
    int nodes = 8 + static_cast<int>(std::ceil(3.5 * span / pk.sigma + 1.3 * span * rate));
    nodes = std::min(4096, (nodes + 7) / 8 * 8);
    const quad::Rule& r = quad::gauss_legendre(nodes);

    Complex f = 0.0, df = 0.0;
    auto add = [&](double w, double weight) {
        const double d = w - pk.center;
        const double env = amp * std::exp(-d * d / (4.0 * pk.sigma * pk.sigma)) * norm_factor(w);
        const Complex e = std::exp(kI * (w * (ph.phi + pk.v0))) * (env * weight);
        f += e;
        df += kI * (w * ph.dphi) * e;
    };
    if (lo > 0.0) {
        const double mid = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (int i = 0; i < nodes; ++i) add(mid + h * r.nodes[i], h * r.weights[i]);
    } else {
        // w = hi t^2 absorbs the 1/sqrt(w) endpoint behaviour
        for (int i = 0; i < nodes; ++i) {
            const double t = 0.5 * (1.0 + r.nodes[i]);
            if (t <= 0.0) continue;
            add(hi * t * t, 0.5 * r.weights[i] * 2.0 * hi * t);
        }
    }
    return {f, df};
}

Packet wrap_sharp(const FamilyRef& fr, double sigma) {
    Packet p;
    p.family = fr.fam;
    p.n = fr.n;
    p.center = fr.w;
    p.sigma = sigma;
    p.v0 = 0.0;
    return p;
}

bool is_sharp(const Mode& m) { return !std::holds_alternative<Packet>(m.kind); }

Packet as_packet(const Mode& m, double sigma) {
    if (const auto* p = std::get_if<Packet>(&m.kind)) return *p;
    return std::visit(
        [&](const auto& x) -> Packet {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Packet>) return x;
            else return wrap_sharp(family_of(x), sigma);
        },
        m.kind);
}

ChartKind home_chart(Family f) {
    switch (f) {
    case Family::plane: return ChartKind::global;
    case Family::diamond: return ChartKind::diamond;
    case Family::exterior: return ChartKind::exterior;
    }
    return ChartKind::global;
}

// Abel-regularized \int ds e^{-i mu s} S(s), S = logistic step.
Complex ft_step(double mu) { return Complex(0.0, -kPi / std::sinh(kPi * mu)); }

} // namespace

double Chart::to_V(double s) const {
    switch (kind) {
    case ChartKind::global: return s;
    case ChartKind::diamond: return 4.0 * n + 2.0 * std::tanh(0.5 * s);
    case ChartKind::exterior: return 2.0 / std::tanh(0.5 * s);
    }
    return s;
}

double exterior_log_ratio(int n, double s) {
    if (n == 0) throw std::invalid_argument("exterior_log_ratio: n must be nonzero");
    return log_lin_exp(n + 1.0, n, s) - log_lin_exp(n, n - 1.0, s);
}

double exterior_log_ratio_slope(int n, double s) {
    if (n == 0) throw std::invalid_argument("exterior_log_ratio_slope: n must be nonzero");
    return log_lin_exp_slope(n + 1.0, n, s) - log_lin_exp_slope(n, n - 1.0, s);
}

ModeValue eval_mode(const ModeLabel& m, double V, const geometry::DiamondScale& scale) {
    if (!std::isfinite(V)) throw std::invalid_argument("eval_mode: V must be finite");
    const double a = scale.a();
    const double x = a * V;
    const FamilyRef fr = std::visit([](const auto& y) { return family_of(y); }, m);
    check_freq(fr.w, "eval_mode");
    const double w = fr.w / a;
    const double unit = 1.0 / std::sqrt(a);
    if (fr.fam == Family::diamond && std::abs(x - 4.0 * fr.n) == 2.0) return {0.0, true};
    if (fr.fam == Family::exterior && std::abs(x) == 2.0) return {0.0, true};
    const ChartSample cs = sharp_sample(fr.fam, fr.n, w, Chart{ChartKind::global, 0}, x);
    return {cs.f * unit, false};
}

ChartSample eval_in_chart(const Mode& m, const Chart& c, double s) {
    ChartSample cs;
    if (const auto* p = std::get_if<Packet>(&m.kind)) {
        check_packet(*p);
        cs = packet_sample(*p, c, s);
    } else {
        const FamilyRef fr = std::visit(
            [](const auto& y) -> FamilyRef {
                using T = std::decay_t<decltype(y)>;
                if constexpr (std::is_same_v<T, Packet>) return {Family::diamond, 0, 1.0};
                else return family_of(y);
            },
            m.kind);
        check_freq(fr.w, "eval_in_chart");
        cs = sharp_sample(fr.fam, fr.n, fr.w, c, s);
    }
    if (m.conjugate) {
        cs.f = std::conj(cs.f);
        cs.df = std::conj(cs.df);
    }
    return cs;
}

KGProduct kg_product(const Mode& m1, const Mode& m2, double tol, const KGOptions& opt) {
    if (!(tol > 0.0)) throw std::invalid_argument("kg_product: tol must be > 0");
    if (is_sharp(m1) && is_sharp(m2) && !opt.smear_sharp)
        throw DistributionalInputError("kg_product: both inputs are sharp modes; the product is distributional");
    if (!(opt.sharp_sigma > 0.0)) throw std::invalid_argument("kg_product: sharp_sigma must be > 0");

    const Packet p1 = as_packet(m1, opt.sharp_sigma);
    const Packet p2 = as_packet(m2, opt.sharp_sigma);
    check_packet(p1);
    check_packet(p2);
    const Mode a{p1, m1.conjugate}, b{p2, m2.conjugate};

    Chart chart;
    if (p1.family == Family::diamond && p2.family == Family::diamond) {
        if (p1.n != p2.n) return {0.0, 0.0};
        chart = {ChartKind::diamond, p1.n};
    } else if (p1.family == Family::diamond) {
        chart = {ChartKind::diamond, p1.n};
    } else if (p2.family == Family::diamond) {
        chart = {ChartKind::diamond, p2.n};
    } else if (p1.family == Family::plane || p2.family == Family::plane) {
        chart = {ChartKind::global, 0};
    } else {
        chart = {ChartKind::exterior, 0};
    }
    if (chart.kind == ChartKind::diamond && chart.n == 0 &&
        (p1.family == Family::exterior || p2.family == Family::exterior))
        return {0.0, 0.0};

    // Envelope |F(s)| ~ exp(-sigma^2 (s - v0)^2) for a packet in its own chart.
    const double reach = std::sqrt(std::log(1e3 / std::min(tol, 1e-3))) + 1.5;
    double lo = -1e300, hi = 1e300;
    for (const Packet* p : {&p1, &p2}) {
        if (home_chart(p->family) != chart.kind) continue;
        const double half = reach / p->sigma;
        lo = std::max(lo, p->v0 - half);
        hi = std::min(hi, p->v0 + half);
    }
    if (!(hi > lo)) return {0.0, 0.0};

    const double orient = chart.orientation();
    auto integrand = [&](double s) -> Complex {
        const ChartSample f = eval_in_chart(a, chart, s);
        const ChartSample h = eval_in_chart(b, chart, s);
        return orient * (-kI) * (f.f * std::conj(h.df) - std::conj(h.f) * f.df);
    };

    quad::Options qo;
    qo.abs_tol = tol;
    qo.rel_tol = 0.0;
    qo.max_evals = 2'000'000;
    qo.frequency = [&](double s) {
        double w = 0.0;
        for (const Packet* p : {&p1, &p2}) {
            const PhaseData ph = sharp_phase(p->family, p->n, chart, s);
            if (ph.in_support) w += (p->center + 6.0 * p->sigma) * std::abs(ph.dphi);
        }
        return w;
    };
    std::vector<double> bp{lo, hi};
    if (chart.kind == ChartKind::exterior && lo < 0.0 && hi > 0.0) bp = {lo, 0.0, hi};
    const quad::Result r = quad::adaptive(integrand, bp, qo);
    if (!r.converged)
        throw ConvergenceError("kg_product: quadrature did not reach tol (est. error " + std::to_string(r.error) + ")");
    return {r.value, r.error};
}

KGProduct sharp_diamond_product(const DiamondMode& g, const Mode& h, double tol) {
    check_freq(g.omega, "sharp_diamond_product");
    if (!(tol > 0.0)) throw std::invalid_argument("sharp_diamond_product: tol must be > 0");
    if (!is_sharp(h)) throw std::invalid_argument("sharp_diamond_product: h must be a sharp mode");

    struct Tail {
        Complex c = 0.0;
        double lambda = 0.0;
    };
    Tail minus, plus;
    const int n = g.n;
    const double w = g.omega;
    const double conj_sign = h.conjugate ? -1.0 : 1.0;  // h* phase sign flip

    if (const auto* d = std::get_if<DiamondMode>(&h.kind)) {
        check_freq(d->omega, "sharp_diamond_product");
        if (d->n == n) throw DistributionalInputError("sharp_diamond_product: same-diamond modes are delta-normalized");
        return {0.0, 0.0};
    } else if (const auto* p = std::get_if<PlaneWave>(&h.kind)) {
        check_freq(p->k, "sharp_diamond_product");
        for (int side = -1; side <= 1; side += 2) {
            const double V = 4.0 * n + 2.0 * side;
            Complex hv = std::exp(kI * (-p->k * V)) * norm_factor(p->k);
            if (h.conjugate) hv = std::conj(hv);
            (side < 0 ? minus : plus).c = std::conj(hv);
        }
    } else if (const auto* e = std::get_if<ExteriorMode>(&h.kind)) {
        check_freq(e->omega, "sharp_diamond_product");
        if (n == 0) return {0.0, 0.0};
        for (int side = -1; side <= 1; side += 2) {
            double s1, o1, s2, o2;
            log_lin_exp_asym(n + 1.0, n, side > 0, s1, o1);
            log_lin_exp_asym(n, n - 1.0, side > 0, s2, o2);
            // log R ~ (s1 - s2) s + (o1 - o2); h* = exp(-i conj_sign w_ex log R) / N
            Tail& t = side < 0 ? minus : plus;
            t.lambda = -conj_sign * e->omega * (s1 - s2);
            t.c = std::exp(kI * (-conj_sign * e->omega * (o1 - o2))) * norm_factor(e->omega);
        }
    }

    const Chart chart{ChartKind::diamond, n};
    auto remainder = [&](double s) -> Complex {
        const Complex hs = std::conj(eval_in_chart(h, chart, s).f);
        const double S = 0.5 * (1.0 + std::tanh(0.5 * s));
        const Complex model = minus.c * std::exp(kI * (minus.lambda * s)) * (1.0 - S) +
                              plus.c * std::exp(kI * (plus.lambda * s)) * S;
        return std::exp(kI * (-w * s)) * (hs - model);
    };

    Complex tails = 0.0;
    for (const Tail* t : {&minus, &plus}) {
        if (t->c == 0.0) continue;
        const double mu = w - t->lambda;
        if (std::abs(mu) < 1e-12 * std::max(1.0, w))
            throw PoleError("sharp_diamond_product: tail frequency equals the diamond frequency");
        const Complex ft = ft_step(mu);
        tails += t->c * (t == &plus ? ft : -ft);
    }

    quad::Options qo;
    qo.abs_tol = 0.1 * tol / std::sqrt(w / kPi);
    qo.rel_tol = 0.0;
    double kmax = 0.0;
    if (const auto* p = std::get_if<PlaneWave>(&h.kind)) kmax = p->k;
    if (const auto* e = std::get_if<ExteriorMode>(&h.kind)) kmax = e->omega;
    qo.frequency = [&](double) { return w + kmax; };
    const double L = 60.0 + 4.0 * std::log1p(kmax);
    const double bp[3] = {-L, 0.0, L};
    const quad::Result r = quad::adaptive(remainder, std::span<const double>(bp, 3), qo);
    const double pref = std::sqrt(w / kPi);
    const double err = pref * r.error;
    if (!r.converged || err > tol)
        throw ConvergenceError("sharp_diamond_product: quadrature did not reach tol");
    return {pref * (r.value + tails), err};
}

Complex packet_overlap(const Packet& p1, const Packet& p2) {
    check_packet(p1);
    check_packet(p2);
    const double s1 = p1.sigma * p1.sigma, s2 = p2.sigma * p2.sigma;
    const double A = 0.25 / s1 + 0.25 / s2;
    const Complex B = Complex(0.5 * p1.center / s1 + 0.5 * p2.center / s2, p1.v0 - p2.v0);
    const double C = 0.25 * p1.center * p1.center / s1 + 0.25 * p2.center * p2.center / s2;
    const double amp = std::pow(4.0 * kPi * kPi * s1 * s2, -0.25);
    return amp * std::sqrt(kPi / A) * std::exp(B * B / (4.0 * A) - C);
}

} // namespace diamond::modes
