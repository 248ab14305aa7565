#include "qbm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <gsl/gsl_integration.h>

#include "qbm/errors.hpp"

namespace qbm {

void SpectralConfig::validate() const {
    if (!(coupling >= 0.0) || !std::isfinite(coupling))
        throw std::invalid_argument("coupling strength must be finite and nonnegative");
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw std::invalid_argument("cutoff must be finite and positive");
}

void ModeList::validate() const {
    if (frequency.size() != coupling.size()) throw std::invalid_argument("mode list length mismatch");
    for (std::size_t k = 0; k < frequency.size(); ++k) {
        if (!(frequency[k] > 0.0)) throw std::invalid_argument("mode frequencies must be positive");
        if (k > 0 && !(frequency[k] > frequency[k - 1]))
            throw std::invalid_argument("mode frequencies must be strictly increasing");
    }
}

double eval_spectral_density(const SpectralConfig& cfg, double omega) {
    const double wd2 = cfg.cutoff * cfg.cutoff;
    return cfg.coupling * omega * wd2 / (omega * omega + wd2);
}

double static_susceptibility(const SpectralConfig& cfg) { return cfg.coupling * cfg.cutoff; }

double kernel_g(const SpectralConfig& cfg, double tau, const quad::Options& opt) {
    if (!(tau > 0.0)) fail(ErrorKind::DivergentKernel, "g(tau) requires tau > 0, got " + std::to_string(tau));
    if (cfg.coupling == 0.0) return 0.0;
    auto f = [&](double w) { return eval_spectral_density(cfg, w) * std::exp(-w * tau) / (2.0 * kPi); };
    const double scale = std::max(cfg.cutoff, 1.0 / tau);
    return quad::integrate_half_line(f, {cfg.cutoff, 1.0 / tau}, 10.0 * scale, tau, opt);
}

double kernel_g_prime(const SpectralConfig& cfg, double beta, double tau, const quad::Options& opt) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (tau <= -beta)
        fail(ErrorKind::DivergentKernel, "g'(tau) diverges for tau <= -beta, got " + std::to_string(tau));
    if (cfg.coupling == 0.0) return 0.0;
    const double rate = beta + tau;
    // J e^{-w tau}/(e^{beta w} - 1) written without overflow
    auto f = [&](double w) {
        return eval_spectral_density(cfg, w) * std::exp(-w * rate) / (-std::expm1(-beta * w)) / (2.0 * kPi);
    };
    const double scale = std::max(cfg.cutoff, 1.0 / rate);
    return quad::integrate_half_line(f, {cfg.cutoff, 1.0 / rate}, 10.0 * scale, rate, opt);
}

namespace {

cplx self_energy_quadrature(const SpectralConfig& cfg, cplx s, const quad::Options& opt) {
    auto f = [&](double w) { return eval_spectral_density(cfg, w) / (2.0 * kPi * (s + w)); };
    const double a = cfg.cutoff;
    return quad::integrate_half_line(f, {a, std::abs(s)}, 10.0 * std::max(a, std::abs(s)), 0.0, opt);
}

}  // namespace

cplx self_energy(const SpectralConfig& cfg, cplx s, SelfEnergyMethod method, const quad::Options& opt) {
    if (s.imag() == 0.0 && s.real() <= 0.0)
        fail(ErrorKind::BranchCut, "Sigma(s) has a cut on (-inf, 0], got s = " + std::to_string(s.real()));
    if (cfg.coupling == 0.0) return 0.0;
    const double a = cfg.cutoff;
    const cplx den = s * s + a * a;
    if (method == SelfEnergyMethod::Quadrature || std::abs(den) < 1e-4 * a * a)
        return self_energy_quadrature(cfg, s, opt);
    // partial fractions of w / ((w^2 + a^2)(w + s)) integrated over (0, inf)
    return cfg.coupling * a * a / (2.0 * kPi) * (0.5 * kPi * a + s * std::log(s / a)) / den;
}

cplx thermal_self_energy(const SpectralConfig& cfg, double beta, cplx z, Continuation prescription,
                         const quad::Options& opt) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (z == cplx(0.0)) fail(ErrorKind::DivergentKernel, "Sigma'(0) diverges logarithmically");
    if (cfg.coupling == 0.0) return 0.0;

    // J(w) / (2 pi (e^{beta w} - 1)), finite at w -> 0
    auto weight = [&](double w) {
        if (w == 0.0) return cfg.coupling / (2.0 * kPi * beta);
        return eval_spectral_density(cfg, w) * std::exp(-beta * w) / (-std::expm1(-beta * w)) / (2.0 * kPi);
    };
    const double scale = std::max({cfg.cutoff, 1.0 / beta, std::abs(z)});

    if (z.imag() != 0.0 || z.real() > 0.0) {
        auto f = [&](double w) { return weight(w) / (z + w); };
        std::vector<double> breaks{cfg.cutoff, 1.0 / beta};
        if (z.real() < 0.0) {
            // resolve the Lorentzian peak left by a small distance to the cut
            const double pole = -z.real(), width = std::abs(z.imag());
            breaks.push_back(pole);
            for (double k = 1.0; k * width < 0.5 * pole; k *= 2.0) {
                breaks.push_back(pole - k * width);
                breaks.push_back(pole + k * width);
            }
        }
        return quad::integrate_half_line(f, breaks, 10.0 * scale, beta, opt);
    }

    const double pole = -z.real();
    if (prescription == Continuation::Disabled)
        fail(ErrorKind::PoleOnAxis, "reflected thermal self-energy evaluated on its pole line at " +
                                        std::to_string(pole));
    const double fp = weight(pole);
    auto subtracted = [&](double w) { return (weight(w) - fp) / (w - pole); };
    auto plain = [&](double w) { return weight(w) / (w - pole); };
    // The difference quotient cancels next to the pole, so its relative accuracy bottoms out
    // well above rel_tol; these pieces are small next to the tail contribution.
    quad::Options near = opt;
    near.rel_tol = std::max(opt.rel_tol, 1e-8);
    double pv = quad::integrate(subtracted, 0.0, pole, near) + quad::integrate(subtracted, pole, 2.0 * pole, near);
    pv += quad::integrate_half_line([&](double u) { return plain(2.0 * pole + u); }, {cfg.cutoff, 1.0 / beta},
                                    10.0 * scale, beta, opt);
    switch (prescription) {
        case Continuation::Upper: return {pv, -kPi * fp};
        case Continuation::Lower: return {pv, kPi * fp};
        default: return {pv, 0.0};
    }
}

ModeList discretize(const SpectralConfig& cfg, std::size_t kc, double omega_max, NodeRule rule) {
    if (kc == 0) fail(ErrorKind::InvalidGrid, "k_c must be at least 1");
    if (rule == NodeRule::GaussLegendre && !(omega_max > 0.0))
        fail(ErrorKind::InvalidGrid, "omega_max must be positive");
    cfg.validate();

    gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(kc);
    std::vector<std::pair<double, double>> nodes(kc);
    for (std::size_t i = 0; i < kc; ++i) {
        double x = 0.0, w = 0.0;
        if (rule == NodeRule::GaussLegendre) {
            gsl_integration_glfixed_point(0.0, omega_max, i, &x, &w, table);
        } else {
            gsl_integration_glfixed_point(0.0, 1.0, i, &x, &w, table);
            const double t = 0.5 * kPi * x;
            const double c = std::cos(t);
            w *= cfg.cutoff * 0.5 * kPi / (c * c);
            x = cfg.cutoff * std::tan(t);
        }
        nodes[i] = {x, w};
    }
    gsl_integration_glfixed_table_free(table);
    std::sort(nodes.begin(), nodes.end());

    ModeList modes;
    modes.frequency.resize(kc);
    modes.coupling.resize(kc);
    for (std::size_t i = 0; i < kc; ++i) {
        const auto [x, w] = nodes[i];
        const double v2 = eval_spectral_density(cfg, x) * w / (2.0 * kPi);
        modes.frequency[i] = x;
        modes.coupling[i] = v2 > 0.0 ? -std::sqrt(v2) : 0.0;
    }
    return modes;
}

}  // namespace qbm
