#pragma once

// Lorentz-Drude reservoir: spectral density, imaginary-time kernels, their Laplace
// transforms and the finite-mode discretization. Frequencies are in units of the
// system frequency (omega_S = 1), hbar = k_B = 1.

#include <complex>
#include <cstddef>
#include <vector>

#include "qbm/quadrature.hpp"

namespace qbm {

using cplx = std::complex<double>;

inline constexpr double kSystemFrequency = 1.0;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct SpectralConfig {
    double coupling = 0.5;  // Gamma
    double cutoff = 20.0;   // omega_D

    void validate() const;
};

struct ModeList {
    std::vector<double> frequency;  // strictly increasing, > 0
    std::vector<double> coupling;   // V_k

    std::size_t size() const { return frequency.size(); }
    void validate() const;
};

enum class NodeRule {
    GaussLegendre,  // Gauss-Legendre on (0, omega_max]
    HalfLine,       // Gauss-Legendre in x with omega = omega_D tan(pi x / 2), x in (0, 1)
};

// How the reflected thermal self-energy is continued onto its cut (negative real argument).
enum class Continuation { Principal, Upper, Lower, Disabled };

enum class SelfEnergyMethod { ClosedForm, Quadrature };

double eval_spectral_density(const SpectralConfig& cfg, double omega);

// Static bath susceptibility (2/pi) int J(w)/w dw = Gamma omega_D. The continuum model has a
// bounded-below Hamiltonian only while this stays below omega_S.
double static_susceptibility(const SpectralConfig& cfg);

double kernel_g(const SpectralConfig& cfg, double tau, const quad::Options& opt = {});
double kernel_g_prime(const SpectralConfig& cfg, double beta, double tau, const quad::Options& opt = {});

cplx self_energy(const SpectralConfig& cfg, cplx s, SelfEnergyMethod method = SelfEnergyMethod::ClosedForm,
                 const quad::Options& opt = {});

// Sigma'(z) = int dw/2pi J(w) / [(z + w)(e^{beta w} - 1)]. Pass z = -s for the reflected term.
cplx thermal_self_energy(const SpectralConfig& cfg, double beta, cplx z,
                         Continuation prescription = Continuation::Principal, const quad::Options& opt = {});

ModeList discretize(const SpectralConfig& cfg, std::size_t kc, double omega_max,
                    NodeRule rule = NodeRule::GaussLegendre);

}  // namespace qbm
