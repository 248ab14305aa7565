#pragma once

// Ground-truth Gaussian machinery for a bath discretized into k_c modes.

#include <vector>

#include <Eigen/Dense>

#include "qbm/gaussian_chart.hpp"
#include "qbm/kernel.hpp"
#include "qbm/spectral.hpp"

namespace qbm {

// Reflection in the minor diagonal: out(i, j) = in(n-1-j, n-1-i).
Eigen::MatrixXd reflect_minor(const Eigen::MatrixXd& m);
// Reflection in the major diagonal: out(i, j) = in(j, i).
Eigen::MatrixXd reflect_major(const Eigen::MatrixXd& m);

struct Generator {
    Eigen::MatrixXd D;  // -beta [[omega_S, V],[V^T, diag omega_k]]
    Eigen::MatrixXd R;  // -beta [[reversed V, 0],[0, V^T]]
    double beta = 0.0;

    Eigen::MatrixXd D_reflected() const { return reflect_minor(D); }
    Eigen::MatrixXd R_reflected() const { return reflect_major(R); }
    // [[D, R],[-R^, -D~]]
    Eigen::MatrixXd block() const;
};

Generator build_generator(const ModeList& modes, double beta);

struct TotalGaussian {
    Eigen::MatrixXcd omega;  // Hermitian, system index first
    Eigen::MatrixXcd pair;   // symmetric
    double log_sqrt_det_omega = 0.0;  // ln <0|e^{-beta H}|0>
    double log_z_total = 0.0;         // ln Tr e^{-beta H}, symmetric zero-point convention

    Eigen::Index dim() const { return omega.rows(); }
};

// Exponentiates the generator. The faithful representation is evaluated on a step
// beta/2^m small enough to keep the blocks well conditioned; the step is then squared
// m times in the normal-ordered chart, which never forms the growing block explicitly.
TotalGaussian total_gaussian(const Generator& gen);

// Chart of the same operator on a single faithful-representation step (no squaring).
GaussianChart faithful_step(const Generator& gen);

struct PartialTrace {
    GaussianKernel kernel;
    double norm_factor = 1.0;      // ||1 - W_EE||^{1/2}
    double log_norm_factor = 0.0;
};

PartialTrace gaussian_partial_trace(const TotalGaussian& tg);

std::vector<double> normal_mode_frequencies(const ModeList& modes);
double log_partition_total(const ModeList& modes, double beta);
double log_partition_env(const ModeList& modes, double beta);

// Z_S^r from moments.
double reduced_partition(const Moments& m);
// Z_S^r from the total state: Z_tot sqrt(Omega_S / det Omega) ||1 - W_EE||^{1/2}, as a logarithm.
double log_reduced_partition_from_total(const TotalGaussian& tg, const PartialTrace& pt);

struct FiniteState {
    GaussianKernel kernel;
    Moments moments;
    double log_z_total = 0.0;
    double log_z_reduced = 0.0;  // via the determinant factor
};

// build_generator -> total_gaussian -> gaussian_partial_trace -> moments.
FiniteState finite_oracle_state(const ModeList& modes, double beta);

struct FockResult {
    Moments moments;
    double log_z_total = 0.0;
    double log_z_reduced = 0.0;
    double truncation_estimate = 0.0;
};

// Brute force in a truncated product Fock basis; product states with
// sum_k omega_k n_k <= clamp(0.6 / (beta omega_S), 0.5, 1) n_max omega_S are kept, each mode capped at n_max.
FockResult fock_oracle(const ModeList& modes, double beta, int n_max = 60);

struct GaussianIntegral {
    cplx log_det_factor{0.0};    // ln ||1 - [[Theta, P'],[P*, Theta^T]]||^{-1/2}
    Eigen::MatrixXcd exponent;   // [1 - [[Theta, P'],[P*, Theta^T]]]^{-1}
};

// int dmu(xi) exp[xi^* Theta xi + 1/2 xi^* P' xi^dag + 1/2 xi^T P* xi + sources], evaluated
// through the Schur complement Phi = Theta + P' (1 - Theta^T)^{-1} P*.
GaussianIntegral generalized_gaussian_integral(const Eigen::MatrixXcd& theta, const Eigen::MatrixXcd& create,
                                               const Eigen::MatrixXcd& annihilate);

}  // namespace qbm
