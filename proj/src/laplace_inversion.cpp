#include "qbm/laplace_inversion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbm/errors.hpp"

namespace qbm {

namespace {

using cplx = std::complex<double>;
constexpr double kPiL = 3.141592653589793238462643383279502884;

// Continued-fraction coefficients d_0..d_2M from the samples a_0..a_2M.
std::vector<cplx> qd_coefficients(const std::vector<cplx>& a, int m) {
    const int n = 2 * m;
    std::vector<cplx> d(n + 1);
    d[0] = a[0];
    std::vector<cplx> e(n + 1, 0.0), q(n, 0.0);
    for (int i = 0; i < n; ++i) q[i] = a[i + 1] / a[i];
    for (int r = 1; r <= m; ++r) {
        std::vector<cplx> e_new(n - 2 * r + 1);
        for (int i = 0; i <= n - 2 * r; ++i) e_new[i] = q[i + 1] - q[i] + e[i + 1];
        d[2 * r - 1] = -q[0];
        d[2 * r] = -e_new[0];
        if (r < m) {
            std::vector<cplx> q_new(n - 2 * r);
            for (int i = 0; i < n - 2 * r; ++i) q_new[i] = q[i + 1] * e_new[i + 1] / e_new[i];
            q = std::move(q_new);
        }
        e = std::move(e_new);
    }
    return d;
}

// Returns the accelerated sum and the previous approximant.
std::pair<cplx, cplx> continued_fraction(const std::vector<cplx>& d, cplx z) {
    const int n = static_cast<int>(d.size()) - 1;
    std::vector<cplx> A(n + 2), B(n + 2);  // index shifted by one: A[k+1] = A_k
    A[0] = 0.0;
    A[1] = d[0];
    B[0] = 1.0;
    B[1] = 1.0;
    for (int k = 1; k < n; ++k) {
        A[k + 1] = A[k] + d[k] * z * A[k - 1];
        B[k + 1] = B[k] + d[k] * z * B[k - 1];
    }
    // remainder estimate for the last step
    const cplx h = 0.5 * (1.0 + (d[n - 1] - d[n]) * z);
    const cplx rem = -h * (1.0 - std::sqrt(1.0 + d[n] * z / (h * h)));
    A[n + 1] = A[n] + rem * A[n - 1];
    B[n + 1] = B[n] + rem * B[n - 1];
    return {A[n + 1] / B[n + 1], A[n] / B[n]};
}

}  // namespace

InversionResult de_hoog_invert(const std::function<std::vector<cplx>(cplx)>& transform, double t, double sigma,
                               const DeHoogOptions& opt) {
    if (!(t > 0.0)) throw std::invalid_argument("inversion time must be positive");
    const int m = opt.order;
    const double period = opt.period_factor * t;

    std::vector<std::vector<cplx>> samples(2 * m + 1);
    for (int k = 0; k <= 2 * m; ++k) samples[k] = transform(cplx(sigma, k * kPiL / period));
    const std::size_t ncomp = samples[0].size();

    InversionResult out;
    out.values.resize(ncomp);
    const cplx z = std::exp(cplx(0.0, kPiL * t / period));
    const double scale = std::exp(sigma * t) / period;
    for (std::size_t c = 0; c < ncomp; ++c) {
        std::vector<cplx> a(2 * m + 1);
        for (int k = 0; k <= 2 * m; ++k) a[k] = samples[k][c];
        a[0] *= 0.5;
        double value = 0.0, err = 0.0;
        if (std::all_of(a.begin(), a.end(), [](cplx x) { return x == cplx(0.0); })) {
            value = 0.0;
        } else {
            const auto d = qd_coefficients(a, m);
            const auto [last, prev] = continued_fraction(d, z);
            value = scale * last.real();
            err = scale * std::abs(last.real() - prev.real());
        }
        if (!std::isfinite(value)) fail(ErrorKind::NoConvergence, "Bromwich series produced a non-finite value");
        out.values[c] = value;
        out.error_estimate = std::max(out.error_estimate, err);
    }
    if (out.error_estimate > opt.tolerance)
        fail(ErrorKind::NoConvergence,
             "Bromwich series error estimate " + std::to_string(out.error_estimate) + " exceeds tolerance");
    return out;
}

}  // namespace qbm
