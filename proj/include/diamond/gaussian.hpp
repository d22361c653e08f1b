// gaussian.hpp: quadrature covariances of Gaussian packet modes in the
// Minkowski vacuum, joint-quadrature variances and the two-mode squeezing test.
//
// X(phi) = b e^{-i phi} + b^dag e^{i phi}; vacuum shot noise V = 1.
// Ordering (X_1(0), X_1(pi/2), X_2(0), X_2(pi/2), ...).

#pragma once

#include "diamond/wavepacket.hpp"

#include <Eigen/Dense>

#include <vector>

namespace diamond::gaussian {

struct CovarianceMatrix {
    std::vector<WavepacketSpec> modes;
    Eigen::MatrixXd M;      // Re <R_a R_b>, symmetric
    Eigen::MatrixXd Sigma;  // Im <R_a R_b> = [R_a, R_b] / 2i
    double min_eig = 0.0;   // smallest eigenvalue of M + i Sigma
};

// All packets diamond-hosted, or all Minkowski-hosted. Throws
// ConsistencyError if M + i Sigma has an eigenvalue below -1e-9.
CovarianceMatrix build_covariance(const std::vector<WavepacketSpec>& specs, double tol);

enum class Sign { plus, minus };

// V((X_i(phi) +- X_j(phi)) / sqrt 2). std::out_of_range for bad or equal indices.
double joint_variance(const CovarianceMatrix& cov, int i, int j, Sign sign, double phi);

// V(X_i(phi))
double variance(const CovarianceMatrix& cov, int i, double phi);

struct Witness {
    bool entangled = false;
    double V_minus_0 = 0.0;
    double V_plus_half_pi = 0.0;
};
constexpr double kWitnessMargin = 1e-6;

Witness squeezing_witness(const CovarianceMatrix& cov, int i, int j);

struct Fig2Row {
    double phi;
    double omega1;
    double V_minus;
    double V_plus;
    bool entangled;  // squeezing_witness on the same pair
};

struct Fig2Fixed {
    double omega0 = 1.0;
    double sigma = 0.02;
    double v = 0.0;
};

std::vector<double> default_fig2_grid();   // 0.50, 0.51, ..., 1.50
std::vector<double> default_fig2_phases(); // 0, 0.2 pi

// Rows ordered by (phi, omega1) for packets in diamonds 0 and 1.
std::vector<Fig2Row> fig2_sweep(const std::vector<double>& phis, const std::vector<double>& omega1_grid,
                                const Fig2Fixed& fixed = {}, double tol = 1e-9);

} // namespace diamond::gaussian
