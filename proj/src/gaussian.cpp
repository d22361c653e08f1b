// gaussian.cpp: covariance assembly and squeezing witness

#include "diamond/gaussian.hpp"

#include "diamond/correlations.hpp"
#include "diamond/errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace diamond::gaussian {

namespace {

using Complex = std::complex<double>;

// [b_p, b_q^dag] = \int G_p G_q* for packets on one frequency axis
Complex commutator(const WavepacketSpec& p, const WavepacketSpec& q) {
    const SmearNodes np = smear_nodes(p, 2.0 + std::abs(q.v0), false);
    Complex s = 0.0;
    for (std::size_t i = 0; i < np.omega.size(); ++i) s += np.weight[i] * std::conj(packet_amplitude(q, np.omega[i]));
    return s;
}

bool same_axis(const WavepacketSpec& p, const WavepacketSpec& q) {
    if (p.host != q.host) return false;
    return p.host == Host::minkowski || p.n == q.n;
}

double reduce_phase(double phi) {
    if (!std::isfinite(phi)) throw std::invalid_argument("quadrature phase must be finite");
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

void check_index(const CovarianceMatrix& cov, int i) {
    if (i < 0 || i >= static_cast<int>(cov.modes.size())) throw std::out_of_range("mode index " + std::to_string(i) + " out of range");
}

double block_form(const CovarianceMatrix& cov, int i, int j, double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    const Eigen::Matrix2d b = cov.M.block<2, 2>(2 * i, 2 * j);
    return c * c * b(0, 0) + c * s * (b(0, 1) + b(1, 0)) + s * s * b(1, 1);
}

} // namespace

CovarianceMatrix build_covariance(const std::vector<WavepacketSpec>& specs, double tol) {
    if (specs.empty()) throw std::invalid_argument("build_covariance: empty mode list");
    if (!(tol > 0.0)) throw std::invalid_argument("build_covariance: tol must be > 0");
    const Host host = specs.front().host;
    for (const auto& s : specs) {
        s.validate();
        if (s.host != host) throw std::invalid_argument("build_covariance: mixing diamond and Minkowski packets is not supported");
    }
    const int m = static_cast<int>(specs.size());

    // Moments N = <b_i^dag b_j>, S = <b_i b_j>, C = [b_i, b_j^dag].
    Eigen::MatrixXcd N = Eigen::MatrixXcd::Zero(m, m), S = Eigen::MatrixXcd::Zero(m, m), C = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            if (same_axis(specs[i], specs[j])) {
                C(i, j) = commutator(specs[i], specs[j]);
                C(j, i) = std::conj(C(i, j));
            }
            if (host == Host::minkowski) continue;  // vacuum of its own modes
            const correlations::SecondMoment mo = correlations::smeared_moments(specs[i], specs[j], tol);
            S(i, j) = S(j, i) = mo.bb;
            N(i, j) = mo.bdag_b;
            N(j, i) = std::conj(mo.bdag_b);
        }
    }

    // <X_i(phi) X_j(psi)> = 2 Re(S e^{-i(phi+psi)}) + 2 Re(N e^{i(phi-psi)}) + C e^{i(psi-phi)}
    Eigen::MatrixXcd gram(2 * m, 2 * m);
    const double ph[2] = {0.0, std::numbers::pi / 2};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const double f = ph[a], g = ph[b];
                    const Complex v = 2.0 * std::real(S(i, j) * std::polar(1.0, -(f + g))) +
                                      2.0 * std::real(N(i, j) * std::polar(1.0, f - g)) + C(i, j) * std::polar(1.0, g - f);
                    gram(2 * i + a, 2 * j + b) = v;
                }

    CovarianceMatrix cov;
    cov.modes = specs;
    cov.M = gram.real();
    cov.M = 0.5 * (cov.M + cov.M.transpose()).eval();
    cov.Sigma = gram.imag();
    cov.Sigma = 0.5 * (cov.Sigma - cov.Sigma.transpose()).eval();
    Eigen::MatrixXcd H = cov.M.cast<Complex>() + Complex(0.0, 1.0) * cov.Sigma.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    cov.min_eig = es.eigenvalues().minCoeff();
    if (cov.min_eig < -1e-9)
        throw ConsistencyError("build_covariance: unphysical covariance, min eigenvalue " + std::to_string(cov.min_eig));
    return cov;
}

double variance(const CovarianceMatrix& cov, int i, double phi) {
    check_index(cov, i);
    return block_form(cov, i, i, reduce_phase(phi));
}

double joint_variance(const CovarianceMatrix& cov, int i, int j, Sign sign, double phi) {
    check_index(cov, i);
    check_index(cov, j);
    if (i == j) throw std::out_of_range("joint_variance: indices must differ");
    const double p = reduce_phase(phi);
    const double cross = 0.5 * (block_form(cov, i, j, p) + block_form(cov, j, i, p));
    const double s = sign == Sign::plus ? 1.0 : -1.0;
    return 0.5 * (block_form(cov, i, i, p) + block_form(cov, j, j, p)) + s * cross;
}

Witness squeezing_witness(const CovarianceMatrix& cov, int i, int j) {
    Witness w;
    w.V_minus_0 = joint_variance(cov, i, j, Sign::minus, 0.0);
    w.V_plus_half_pi = joint_variance(cov, i, j, Sign::plus, std::numbers::pi / 2);
    w.entangled = w.V_minus_0 < 1.0 - kWitnessMargin && w.V_plus_half_pi < 1.0 - kWitnessMargin;
    return w;
}

std::vector<double> default_fig2_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 100; ++k) g.push_back(0.5 + 0.01 * k);
    return g;
}

std::vector<double> default_fig2_phases() { return {0.0, 0.2 * std::numbers::pi}; }

std::vector<Fig2Row> fig2_sweep(const std::vector<double>& phis, const std::vector<double>& omega1_grid,
                                const Fig2Fixed& fixed, double tol) {
    if (phis.empty() || omega1_grid.empty()) throw std::invalid_argument("fig2_sweep: empty grid");
    std::vector<Fig2Row> rows;
    rows.reserve(phis.size() * omega1_grid.size());
    std::vector<CovarianceMatrix> covs;
    covs.reserve(omega1_grid.size());
    for (double w1 : omega1_grid) {
        if (!std::isfinite(w1)) throw std::invalid_argument("fig2_sweep: non-finite frequency");
        const WavepacketSpec p0{0, fixed.omega0, fixed.sigma, fixed.v, Host::diamond};
        const WavepacketSpec p1{1, w1, fixed.sigma, fixed.v, Host::diamond};
        covs.push_back(build_covariance({p1, p0}, tol));
    }
    for (double phi : phis) {
        for (std::size_t k = 0; k < omega1_grid.size(); ++k) {
            const CovarianceMatrix& c = covs[k];
            const Witness w = squeezing_witness(c, 0, 1);
            rows.push_back({phi, omega1_grid[k], joint_variance(c, 0, 1, Sign::minus, phi),
                            joint_variance(c, 0, 1, Sign::plus, phi), w.entangled});
        }
    }
    return rows;
}

} // namespace diamond::gaussian
