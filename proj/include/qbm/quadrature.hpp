#pragma once

// Adaptive Gauss-Kronrod quadrature on log-spaced panels of the half line.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qbm/errors.hpp"

namespace qbm::quad {

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    unsigned max_depth = 15;
};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(std::complex<double> z) { return std::abs(z); }

// Adaptive G7/K15 on a finite or semi-infinite interval.
template <class F>
auto integrate(F&& f, double a, double b, const Options& opt = {}) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0, l1 = 0.0;
    auto r = gauss_kronrod<double, 15>::integrate(f, a, b, opt.max_depth, opt.rel_tol, &err, &l1);
    auto ok = [&] { return std::isfinite(magnitude(r)) && err <= 100.0 * opt.rel_tol * l1 + opt.abs_tol; };
    // Past the roundoff floor the summed K15-G7 estimates grow with depth; a shallower
    // pass can certify the same integral.
    for (unsigned depth = opt.max_depth / 2; !ok() && depth >= 3; depth /= 2) {
        double e2 = 0.0, l2 = 0.0;
        auto r2 = gauss_kronrod<double, 15>::integrate(f, a, b, depth, opt.rel_tol, &e2, &l2);
        if (std::isfinite(magnitude(r2)) && (!std::isfinite(magnitude(r)) || e2 < err)) {
            r = r2;
            err = e2;
            l1 = l2;
        }
    }
    if (!ok()) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "quadrature error estimate %.3g exceeds tolerance (L1 %.3g) on [%.6g, %.6g]",
                      err, l1, a, b);
        fail(ErrorKind::NoConvergence, buf);
    }
    return r;
}

// Integral over (0, inf). Panels are log-spaced below tail_start and refined at the
// supplied break points. The tail beyond tail_start is skipped when the exponential
// bound |f(tail_start)|/decay_rate is below tolerance, otherwise integrated by mapping.
template <class F>
auto integrate_half_line(F&& f, std::vector<double> breaks, double tail_start, double decay_rate,
                         const Options& opt = {}) {
    using R = decltype(f(1.0));
    std::vector<double> edges{0.0};
    const double lo = tail_start * 1e-7;
    for (double x = lo; x < tail_start; x *= 4.0) edges.push_back(x);
    for (double x : breaks)
        if (x > 0.0 && x < tail_start) edges.push_back(x);
    edges.push_back(tail_start);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    R sum{};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) sum += integrate(f, edges[i], edges[i + 1], opt);

    const double bound = decay_rate > 0.0 ? magnitude(f(tail_start)) / decay_rate
                                          : std::numeric_limits<double>::infinity();
    if (bound > 0.1 * opt.rel_tol * magnitude(sum) + opt.abs_tol) {
        sum += integrate(f, tail_start, std::numeric_limits<double>::infinity(), opt);
    }
    return sum;
}

}  // namespace qbm::quad
