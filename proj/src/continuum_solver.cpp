#include "qbm/continuum_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "qbm/errors.hpp"
#include "qbm/finite_oracle.hpp"

namespace qbm {

GaussianKernel moments_to_kernel(const Moments& m) {
    const double d = (1.0 + m.n) * (1.0 + m.n) - std::norm(m.s);
    if (!(d > 0.0)) fail(ErrorKind::NonNormalizable, "(1 + n)^2 <= |s|^2");
    return {cplx(1.0 - (1.0 + m.n) / d, 0.0), m.s / d};
}

Moments kernel_to_moments(const GaussianKernel& k) {
    const cplx om = k.omega;
    const double p2 = std::norm(k.pair);
    if (std::abs(om.imag()) > 1e-8) fail(ErrorKind::NonNormalizable, "Omega_S has an imaginary part");
    const double o = om.real();
    const double dd = (1.0 - o) * (1.0 - o) - p2;
    if (!(dd > 0.0)) fail(ErrorKind::NonNormalizable, "(1 - Omega_S)^2 - |Pi_S|^2 <= 0");
    return {(o * (1.0 - o) + p2) / dd, k.pair / dd};
}

cplx reflected_self_energy(const SpectralConfig& cfg, cplx s, Continuation prescription) {
    if (s.imag() != 0.0 || s.real() < 0.0) return self_energy(cfg, -s);
    if (cfg.coupling == 0.0) return 0.0;
    const double a = cfg.cutoff;
    if (s.real() == 0.0) return cfg.coupling * a / 4.0;
    if (prescription == Continuation::Disabled)
        fail(ErrorKind::PoleOnAxis, "Sigma(-s) evaluated on its cut at s = " + std::to_string(s.real()));
    const double x = s.real();
    const double pv = cfg.coupling * a * a / (2.0 * kPi) * (0.5 * kPi * a - x * std::log(x / a)) / (x * x + a * a);
    const double half_j = 0.5 * eval_spectral_density(cfg, x);
    switch (prescription) {
        case Continuation::Upper: return {pv, -half_j};
        case Continuation::Lower: return {pv, half_j};
        default: return {pv, 0.0};
    }
}

Eigen::Matrix2cd laplace_kernel_matrix(const SpectralConfig& cfg, double beta, cplx s, Continuation prescription,
                                       const quad::Options& opt) {
    const cplx sig = self_energy(cfg, s, SelfEnergyMethod::ClosedForm, opt);
    const cplx sig_r = reflected_self_energy(cfg, s, prescription);
    const cplx th = thermal_self_energy(cfg, beta, s, prescription, opt);
    const cplx th_r = thermal_self_energy(cfg, beta, -s, prescription, opt);
    const cplx x = sig + th + th_r;
    const cplx y = sig_r - th - th_r;
    Eigen::Matrix2cd m;
    m << s + kSystemFrequency + x, x, y, s - kSystemFrequency + y;
    return m;
}

std::vector<double> locate_real_poles(const SpectralConfig& cfg, double beta, const SolverOptions& opt) {
    const double hi = kSystemFrequency + static_susceptibility(cfg);
    auto det = [&](double s) {
        return laplace_kernel_matrix(cfg, beta, cplx(s, 0.0), opt.continuation, opt.quad).determinant().real();
    };
    const int n = 100;
    std::vector<double> roots;
    double x0 = 1e-3 * hi, f0 = det(x0);
    for (int i = 1; i <= n; ++i) {
        const double x1 = hi * (1e-3 + (1.0 - 1e-3) * i / n);
        const double f1 = det(x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if ((f0 < 0.0) != (f1 < 0.0)) {
            boost::uintmax_t iters = 100;
            auto r = boost::math::tools::toms748_solve(det, x0, x1, f0, f1,
                                                       boost::math::tools::eps_tolerance<double>(48), iters);
            roots.push_back(0.5 * (r.first + r.second));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

double bromwich_abscissa(const SpectralConfig& cfg, double beta, const SolverOptions& opt) {
    const auto roots = locate_real_poles(cfg, beta, opt);
    const double largest = roots.empty() ? kSystemFrequency : *std::max_element(roots.begin(), roots.end());
    return 1.5 * largest + 2.0 / beta;
}

namespace {

void require_stable(const SpectralConfig& cfg) {
    const double chi = static_susceptibility(cfg);
    if (chi >= kSystemFrequency)
        fail(ErrorKind::Instability, "bath-induced inverted potential: Gamma * omega_D = " + std::to_string(chi) +
                                         " >= omega_S");
}

double extrapolate(double f1, double f2, double f4) {
    const double d1 = f2 - f1, d2 = f4 - f2;
    if (std::abs(d2) <= 1e-14 * std::max(1.0, std::abs(f4))) return f4;
    const double ratio = d1 / d2;
    if (!(ratio > 1.5)) return f4;
    return f4 + d2 / (ratio - 1.0);
}

cplx extrapolate(cplx f1, cplx f2, cplx f4) {
    return {extrapolate(f1.real(), f2.real(), f4.real()), extrapolate(f1.imag(), f2.imag(), f4.imag())};
}

GaussianKernel solve_laplace(const SpectralConfig& cfg, double beta, const SolverOptions& opt) {
    const double sigma = bromwich_abscissa(cfg, beta, opt);
    auto transform = [&](cplx s) {
        const Eigen::Matrix2cd m = laplace_kernel_matrix(cfg, beta, s, opt.continuation, opt.quad);
        const cplx det = m.determinant();
        return std::vector<cplx>{m(1, 1) / det, -m(0, 1) / det};
    };
    const auto r = de_hoog_invert(transform, beta, sigma, opt.bromwich);
    return {cplx(r.values[0], 0.0), cplx(r.values[1], 0.0)};
}

}  // namespace

LadderResult discretize_ladder(const SpectralConfig& cfg, double beta, const SolverOptions& opt) {
    cfg.validate();
    require_stable(cfg);
    if (opt.base_kc == 0) fail(ErrorKind::InvalidGrid, "base k_c must be positive");
    const double wmax = opt.omega_max > 0.0 ? opt.omega_max : 10.0 * cfg.cutoff;
    LadderResult out;
    for (int i = 0; i < 3; ++i) {
        out.kc[i] = opt.base_kc << i;
        try {
            out.kernels[i] = finite_oracle_state(discretize(cfg, out.kc[i], wmax, opt.rule), beta).kernel;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::InvertedPotential) fail(ErrorKind::Instability, e.what());
            throw;
        }
    }
    out.extrapolated.omega = extrapolate(out.kernels[0].omega, out.kernels[1].omega, out.kernels[2].omega);
    out.extrapolated.pair = extrapolate(out.kernels[0].pair, out.kernels[1].pair, out.kernels[2].pair);
    return out;
}

GaussianKernel solve_kernel(const SpectralConfig& cfg, double beta, const SolverOptions& opt) {
    cfg.validate();
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    require_stable(cfg);
    if (opt.method == SolverMethod::InverseLaplace) return solve_laplace(cfg, beta, opt);
    return discretize_ladder(cfg, beta, opt).extrapolated;
}

CrossValidation cross_validate(const SpectralConfig& cfg, double beta, const SolverOptions& opt, double tolerance) {
    SolverOptions ref = opt, lap = opt;
    ref.method = SolverMethod::DiscretizeExtrapolate;
    lap.method = SolverMethod::InverseLaplace;
    CrossValidation cv;
    cv.reference = solve_kernel(cfg, beta, ref);
    cv.laplace = solve_kernel(cfg, beta, lap);
    const double scale = std::max(std::abs(cv.reference.omega), std::abs(cv.reference.pair));
    cv.relative_difference = std::max(std::abs(cv.reference.omega - cv.laplace.omega),
                                      std::abs(cv.reference.pair - cv.laplace.pair)) / scale;
    cv.agree = cv.relative_difference < tolerance;
    return cv;
}

}  // namespace qbm
