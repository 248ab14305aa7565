#pragma once

// Reduced Gaussian kernel (Omega_S, Pi_S) at tau = beta for the continuum bath.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qbm/kernel.hpp"
#include "qbm/laplace_inversion.hpp"
#include "qbm/spectral.hpp"

namespace qbm {

enum class SolverMethod { InverseLaplace, DiscretizeExtrapolate };

struct SolverOptions {
    SolverMethod method = SolverMethod::DiscretizeExtrapolate;
    // discretize-extrapolate
    std::size_t base_kc = 100;  // ladder {k, 2k, 4k}
    NodeRule rule = NodeRule::HalfLine;
    double omega_max = 0.0;     // Gauss-Legendre rule only; 0 selects 10 omega_D
    // inverse-laplace
    Continuation continuation = Continuation::Principal;
    DeHoogOptions bromwich{};
    quad::Options quad{};
};

// Sigma(-s), continued onto its cut for real positive s.
cplx reflected_self_energy(const SpectralConfig& cfg, cplx s, Continuation prescription);

Eigen::Matrix2cd laplace_kernel_matrix(const SpectralConfig& cfg, double beta, cplx s,
                                       Continuation prescription = Continuation::Principal,
                                       const quad::Options& opt = {});

// Real roots of Re det M(s) on [0, omega_S + Gamma omega_D], bracketed on a uniform scan.
std::vector<double> locate_real_poles(const SpectralConfig& cfg, double beta, const SolverOptions& opt = {});

// Bromwich abscissa 1.5 * (largest real pole) + 2 / beta.
double bromwich_abscissa(const SpectralConfig& cfg, double beta, const SolverOptions& opt = {});

struct LadderResult {
    std::array<std::size_t, 3> kc{};
    std::array<GaussianKernel, 3> kernels{};
    GaussianKernel extrapolated;
};

LadderResult discretize_ladder(const SpectralConfig& cfg, double beta, const SolverOptions& opt = {});

GaussianKernel solve_kernel(const SpectralConfig& cfg, double beta, const SolverOptions& opt = {});

struct CrossValidation {
    GaussianKernel reference;
    GaussianKernel laplace;
    double relative_difference = 0.0;
    bool agree = false;
};

// Runs both methods; the discretize-extrapolate kernel is the reference.
CrossValidation cross_validate(const SpectralConfig& cfg, double beta, const SolverOptions& opt = {},
                               double tolerance = 1e-4);

}  // namespace qbm
