#include "qbm/gibbs_state.hpp"

#include <cmath>
#include <string>

#include "qbm/errors.hpp"
#include "qbm/spectral.hpp"

namespace qbm {

double bose_einstein(double omega, double temperature) { return 1.0 / std::expm1(omega / temperature); }

GibbsCoefficients gibbs_coefficients(const Moments& m) {
    const double v = m.n * m.n + m.n - std::norm(m.s);
    if (!(v > 1e-300)) fail(ErrorKind::ZeroTemperature, "n^2 + n - |s|^2 is not positive");
    const GaussianKernel k = moments_to_kernel(m);

    GibbsCoefficients c;
    c.z_reduced = std::sqrt(v);
    c.alpha = 0.5 * k.pair;
    c.gamma = 0.5 * std::log(k.omega.real());
    c.z_reduced0 = c.z_reduced * std::exp(-c.gamma);

    const double x = (m.n + 0.5) * (m.n + 0.5) - std::norm(m.s);
    c.branch_ambiguous = x < 0.0;
    const double r = std::sqrt(std::abs(x));
    const double log_ratio = std::log((r - 0.5) / (r + 0.5));
    c.eta = (m.n + 0.5) * log_ratio / (2.0 * r);
    c.delta = -m.s * log_ratio / (2.0 * r);
    return c;
}

ReducedHamiltonian reduced_hamiltonian(const Moments& m, double temperature) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
    const GibbsCoefficients c = gibbs_coefficients(m);
    if (c.branch_ambiguous) fail(ErrorKind::BranchAmbiguity, "(n + 1/2)^2 < |s|^2");
    ReducedHamiltonian h;
    h.omega = -2.0 * c.eta * temperature;
    // the a^dag a^dag coefficient of the Gibbs exponent is -Delta^*/2T
    h.pairing = -2.0 * std::conj(c.delta) * temperature;
    if (!(h.omega > std::abs(h.pairing)))
        fail(ErrorKind::UnstableReducedPotential, "omega_S^r <= |Delta_S^r|");
    return h;
}

BogoliubovFrame bogoliubov(const ReducedHamiltonian& h) {
    const double mod = std::abs(h.pairing);
    if (!(h.omega > mod)) fail(ErrorKind::UnstableReducedPotential, "omega_S^r <= |Delta_S^r|");
    BogoliubovFrame f;
    f.omega_bar = std::sqrt((h.omega - mod) * (h.omega + mod));
    if (mod == 0.0) return f;
    // omega wbar - omega^2 + |Delta|^2 = wbar |Delta|^2 / (omega + wbar), free of cancellation
    const double wb = f.omega_bar;
    f.u = std::conj(h.pairing) / std::sqrt(2.0 * wb * mod * mod / (h.omega + wb));
    f.v = h.pairing / std::sqrt(2.0 * wb * (h.omega + wb));
    return f;
}

Moments extended_bose_einstein(const ReducedHamiltonian& h, double temperature) {
    const BogoliubovFrame f = bogoliubov(h);
    const double occ = bose_einstein(f.omega_bar, temperature) + 0.5;
    return {h.omega / f.omega_bar * occ - 0.5, -std::conj(h.pairing) / f.omega_bar * occ};
}

double quasiparticle_occupation(const Moments& m) {
    const double x = (m.n + 0.5) * (m.n + 0.5) - std::norm(m.s);
    if (x < 0.0) fail(ErrorKind::BranchAmbiguity, "(n + 1/2)^2 < |s|^2");
    return std::sqrt(x) - 0.5;
}

double PositionForm::eigenfrequency() const {
    Eigen::Matrix2d a;
    a << effective_mass * harmonic, cross, cross, 1.0 / effective_mass;
    return std::sqrt(a.determinant());
}

PositionForm position_form(const ReducedHamiltonian& h, double mass) {
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    const double re = h.pairing.real();
    if (!(h.omega > re)) fail(ErrorKind::UnstableReducedPotential, "omega_S^r <= Re Delta_S^r");
    PositionForm p;
    p.mass = mass;
    p.effective_mass = mass * kSystemFrequency / (h.omega - re);
    p.harmonic = h.omega * h.omega - re * re;
    p.cross = h.pairing.imag();
    p.transform = coordinate_transform(bogoliubov(h), mass, p.effective_mass);
    return p;
}

Eigen::Matrix2d coordinate_transform(const BogoliubovFrame& f, double mass, double effective_mass) {
    const double mw = mass * kSystemFrequency;
    const double mpw = effective_mass * f.omega_bar;
    Eigen::Matrix2d t;
    t << (f.u.real() + f.v.real()) * mw / mpw, (f.v.imag() - f.u.imag()) / mpw,
        (f.u.imag() + f.v.imag()) * mw, f.u.real() - f.v.real();
    return std::sqrt(mpw / mw) * t;
}

}  // namespace qbm
