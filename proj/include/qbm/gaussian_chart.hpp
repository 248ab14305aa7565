#pragma once

// Normal-ordered Gaussian operators of a real quadratic bosonic Hamiltonian.
// A chart (Omega, P, Q, c) stands for the operator with coherent-state kernel
//   <z| A |z'> = c exp[ z^dag Omega z' + 1/2 z^dag P z^* + 1/2 z'^T Q z' ].

#include <Eigen/Dense>

namespace qbm {

struct GaussianChart {
    Eigen::MatrixXd omega;
    Eigen::MatrixXd create;    // P, pairs a^dag a^dag
    Eigen::MatrixXd annihilate;  // Q, pairs a a
    double log_prefactor = 0.0;  // ln c

    Eigen::Index dim() const { return omega.rows(); }
};

// Product A B of two charts of equal dimension.
GaussianChart compose(const GaussianChart& a, const GaussianChart& b);

// ln Tr A; requires the doubled matrix 1 - [[Omega, P],[Q, Omega^T]] to be positive definite.
double log_trace(const GaussianChart& a);

// Dense matrix exponential (Pade degree 13 with scaling and squaring).
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

}  // namespace qbm
