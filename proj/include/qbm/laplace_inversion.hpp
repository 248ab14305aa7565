#pragma once

// Bromwich-line inversion with de Hoog's quotient-difference acceleration.

#include <complex>
#include <functional>
#include <vector>

namespace qbm {

struct DeHoogOptions {
    int order = 40;              // M; 2M+1 transform samples
    double period_factor = 4.0;  // half-period T = period_factor * t
    double tolerance = 1e-6;     // accepted difference between the last two approximants
};

struct InversionResult {
    std::vector<double> values;
    double error_estimate = 0.0;
};

// Inverts a vector of transforms F_j(s) with real originals at time t on the line Re s = sigma.
// Throws NoConvergence when successive approximants differ by more than the tolerance.
InversionResult de_hoog_invert(const std::function<std::vector<std::complex<double>>(std::complex<double>)>& transform,
                               double t, double sigma, const DeHoogOptions& opt = {});

}  // namespace qbm
