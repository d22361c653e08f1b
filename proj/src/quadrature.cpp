// quadrature.cpp: Gauss-Legendre node generation and adaptive Gauss-Kronrod

#include "diamond/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace diamond::quad {

namespace {

// QUADPACK qk21 abscissae and weights
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208021252491, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double lo, hi;
    Complex value;
    double error;
};

Panel kronrod(const ComplexFn& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    const Complex fc = f(c);
    Complex k = fc * kWgk[10];
    Complex g = 0.0;
    for (int j = 0; j < 10; ++j) {
        const double dx = h * kXgk[j];
        const Complex s = f(c - dx) + f(c + dx);
        k += kWgk[j] * s;
        if (j % 2 == 1) g += kWg[j / 2] * s;
    }
    k *= h;
    g *= h;
    return {lo, hi, k, std::abs(k - g)};
}

} // namespace

const Rule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Rule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;

    auto rule = std::make_unique<Rule>();
    rule->nodes.resize(n);
    rule->weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) { p1 = x; p0 = 1.0; }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        if (n == 1) { x = 0.0; dp = 1.0; }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule->nodes[i] = -x;
        rule->nodes[n - 1 - i] = x;
        rule->weights[i] = rule->weights[n - 1 - i] = (n == 1) ? 2.0 : w;
    }
    auto [pos, ok] = cache.emplace(n, std::move(rule));
    return *pos->second;
}

Complex fixed(const ComplexFn& f, double lo, double hi, int n) {
    const Rule& r = gauss_legendre(n);
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    Complex s = 0.0;
    for (int i = 0; i < n; ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
    return s * h;
}

Result adaptive(const ComplexFn& f, std::span<const double> breakpoints, const Options& opt) {
    if (breakpoints.size() < 2) throw std::invalid_argument("quad::adaptive: need at least two breakpoints");

    std::vector<std::pair<double, double>> initial;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double lo = breakpoints[i], hi = breakpoints[i + 1];
        if (hi == lo) continue;
        if (!(hi > lo)) throw std::invalid_argument("quad::adaptive: breakpoints must be ascending");
        if (!opt.frequency) {
            initial.emplace_back(lo, hi);
            continue;
        }
        // March across the interval keeping the phase advance per panel bounded.
        double x = lo;
        while (x < hi) {
            const double w0 = std::abs(opt.frequency(x));
            double step = (w0 > 0.0) ? opt.max_phase / w0 : hi - x;
            if (w0 > 0.0) {
                const double w1 = std::abs(opt.frequency(std::min(hi, x + step)));
                if (w1 > w0) step = opt.max_phase / w1;
            }
            const double nx = (x + step >= hi || hi - (x + step) < 1e-12 * (hi - lo)) ? hi : x + step;
            initial.emplace_back(x, nx);
            x = nx;
        }
    }

    auto cmp = [](const Panel& a, const Panel& b) { return a.error < b.error; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
    Complex total = 0.0;
    double err = 0.0;
    long evals = 0;
    for (auto [lo, hi] : initial) {
        Panel p = kronrod(f, lo, hi);
        evals += 21;
        total += p.value;
        err += p.error;
        heap.push(p);
    }

    auto target = [&]() { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
    while (err > target() && evals < opt.max_evals && !heap.empty()) {
        Panel p = heap.top();
        const double mid = 0.5 * (p.lo + p.hi);
        if (!(mid > p.lo && mid < p.hi)) break;  // cannot split further
        heap.pop();
        Panel l = kronrod(f, p.lo, mid);
        Panel r = kronrod(f, mid, p.hi);
        evals += 42;
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        heap.push(l);
        heap.push(r);
    }

    // Deterministic re-summation in panel order.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    Complex sum = 0.0;
    double esum = 0.0;
    for (const Panel& p : panels) {
        sum += p.value;
        esum += p.error;
    }
    Result res;
    res.value = sum;
    res.error = esum;
    res.evals = evals;
    res.converged = esum <= std::max(opt.abs_tol, opt.rel_tol * std::abs(sum));
    return res;
}

} // namespace diamond::quad
