// wavepacket.hpp: Gaussian packet description and frequency-smearing rules
//
// G(w) = (2 pi sigma^2)^{-1/4} exp(-(w - w0)^2 / (4 sigma^2)) e^{-i w v0},
// b = \int dw G(w) b_w.

#pragma once

#include <complex>
#include <vector>

namespace diamond {

enum class Host { diamond, minkowski };

struct WavepacketSpec {
    int n = 0;            // diamond index (ignored for a Minkowski host)
    double omega0 = 1.0;  // central frequency, units of a
    double sigma = 0.02;  // bandwidth, units of a
    double v0 = 0.0;      // central position, units of 1/a
    Host host = Host::diamond;

    // std::invalid_argument unless omega0 > 0, sigma > 0, omega0 >= 5 sigma, all finite
    void validate() const;
};

std::complex<double> packet_amplitude(const WavepacketSpec& p, double w);

// Nodes and weights with \sum_i weight_i f(w_i) ~ \int dw G*(w) f(w)
// (or G(w) if conj_weight is false). phase_rate bounds |d arg f / dw| across
// the window and sets the node count.
struct SmearNodes {
    std::vector<double> omega;
    std::vector<std::complex<double>> weight;
};
SmearNodes smear_nodes(const WavepacketSpec& p, double phase_rate, bool conj_weight = true);

} // namespace diamond
