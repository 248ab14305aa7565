#pragma once

// Reduced Gaussian kernel of the Brownian mode and its physical moments.

#include <complex>

namespace qbm {

using cplx = std::complex<double>;

struct GaussianKernel {
    cplx omega{0.0};  // Omega_S
    cplx pair{0.0};   // Pi_S
};

struct Moments {
    double n = 0.0;  // <a^dagger a>
    cplx s{0.0};     // <a a>
};

GaussianKernel moments_to_kernel(const Moments& m);
Moments kernel_to_moments(const GaussianKernel& k);

}  // namespace qbm
