// wavepacket.cpp: Gaussian packet helpers

#include "diamond/wavepacket.hpp"

#include "diamond/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diamond {

void WavepacketSpec::validate() const {
    if (!std::isfinite(omega0) || !std::isfinite(sigma) || !std::isfinite(v0))
        throw std::invalid_argument("WavepacketSpec: non-finite field");
    if (!(omega0 > 0.0)) throw std::invalid_argument("WavepacketSpec: omega0 must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("WavepacketSpec: sigma must be > 0");
    if (omega0 < 5.0 * sigma) throw std::invalid_argument("WavepacketSpec: requires omega0 >= 5 sigma");
}

std::complex<double> packet_amplitude(const WavepacketSpec& p, double w) {
    const double d = w - p.omega0;
    const double amp = std::pow(2.0 * std::numbers::pi * p.sigma * p.sigma, -0.25) *
                       std::exp(-d * d / (4.0 * p.sigma * p.sigma));
    return std::polar(amp, -w * p.v0);
}

SmearNodes smear_nodes(const WavepacketSpec& p, double phase_rate, bool conj_weight) {
    p.validate();
    const double half = 12.0 * p.sigma;
    const double lo = p.omega0 - half, hi = p.omega0 + half;
    const double span = lo > 0.0 ? half : hi;
    const double rate = std::abs(phase_rate) + std::abs(p.v0);
    int nodes = 8 + static_cast<int>(std::ceil(3.5 * span / p.sigma + 1.3 * span * rate));
    nodes = std::min(4096, (nodes + 7) / 8 * 8);
    const quad::Rule& r = quad::gauss_legendre(nodes);

    SmearNodes out;
    out.omega.reserve(nodes);
    out.weight.reserve(nodes);
    auto push = [&](double w, double dw) {
        const std::complex<double> g = packet_amplitude(p, w);
        out.omega.push_back(w);
        out.weight.push_back((conj_weight ? std::conj(g) : g) * dw);
    };
    if (lo > 0.0) {
        const double mid = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (int i = 0; i < nodes; ++i) push(mid + h * r.nodes[i], h * r.weights[i]);
    } else {
        // w = hi t^2 tames integrable 1/sqrt(w)-type behaviour at w -> 0
        for (int i = 0; i < nodes; ++i) {
            const double t = 0.5 * (1.0 + r.nodes[i]);
            push(hi * t * t, r.weights[i] * hi * t);
        }
    }
    return out;
}

} // namespace diamond
