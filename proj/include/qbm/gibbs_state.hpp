#pragma once

// Operator-level description of the reduced squeezed thermal state.

#include <Eigen/Dense>

#include "qbm/kernel.hpp"

namespace qbm {

struct GibbsCoefficients {
    cplx alpha{0.0};
    double gamma = 0.0;
    double eta = 0.0;
    cplx delta{0.0};
    double z_reduced = 0.0;    // Z_S^r
    double z_reduced0 = 0.0;   // Z_S^r e^{-gamma}
    bool branch_ambiguous = false;
};

struct ReducedHamiltonian {
    double omega = 1.0;  // omega_S^r
    cplx pairing{0.0};   // Delta_S^r
};

struct BogoliubovFrame {
    cplx u{1.0};
    cplx v{0.0};
    double omega_bar = 1.0;
};

struct PositionForm {
    double mass = 1.0;            // M
    double effective_mass = 1.0;  // M'
    double harmonic = 1.0;        // omega_r^2 - (Re Delta)^2
    double cross = 0.0;           // Im Delta
    Eigen::Matrix2d transform = Eigen::Matrix2d::Identity();  // (X, P) -> (Xbar, Pbar)

    // Frequency of P^2/2M' + M' harmonic X^2/2 + cross (XP + PX)/2.
    double eigenfrequency() const;
};

GibbsCoefficients gibbs_coefficients(const Moments& m);
ReducedHamiltonian reduced_hamiltonian(const Moments& m, double temperature);
BogoliubovFrame bogoliubov(const ReducedHamiltonian& h);
Moments extended_bose_einstein(const ReducedHamiltonian& h, double temperature);
double quasiparticle_occupation(const Moments& m);
PositionForm position_form(const ReducedHamiltonian& h, double mass = 1.0);
Eigen::Matrix2d coordinate_transform(const BogoliubovFrame& f, double mass, double effective_mass);

double bose_einstein(double omega, double temperature);

}  // namespace qbm
