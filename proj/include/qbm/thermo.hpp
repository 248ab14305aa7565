#pragma once

// Internal energy and heat capacity of the Brownian mode.

#include <optional>
#include <string>
#include <vector>

#include "qbm/continuum_solver.hpp"
#include "qbm/errors.hpp"
#include "qbm/gibbs_state.hpp"
#include "qbm/spectral.hpp"

namespace qbm {

struct ThermoPoint {
    double temperature = 0.0;
    double gamma = 0.0;
    double energy = 0.0;         // U
    double heat_capacity = 0.0;  // C
    double z_reduced = 0.0;      // Z_S^r

    double beta() const { return 1.0 / temperature; }
};

double internal_energy_hamiltonian(const ReducedHamiltonian& h, const Moments& m);
double internal_energy_partition(double omega_bar, double temperature);
// -d ln Z / d beta by central differences with step beta * 1e-5.
double internal_energy_partition_numeric(double omega_bar, double temperature);

double heat_capacity_exact(double omega_bar, double temperature);

enum class IncompleteMode { DropImaginary, DropPairing };
double heat_capacity_incomplete(IncompleteMode mode, const ReducedHamiltonian& h, double temperature);

double naive_internal_energy(const ModeList& modes, double beta);
double naive_heat_capacity(const ModeList& modes, double beta);

enum class Pipeline { Exact, DropImaginary, DropPairing, Naive };
enum class SweepAxis { Temperature, Coupling };

struct PipelineOptions {
    Pipeline pipeline = Pipeline::Exact;
    SolverOptions solver{};
    std::size_t naive_kc = 400;
    double naive_omega_max = 200.0;
};

struct SweepPoint {
    ThermoPoint point;
    std::optional<ErrorKind> error;
    std::string message;
};

// One pipeline evaluation; throws on failure.
ThermoPoint evaluate_thermo(const SpectralConfig& cfg, double temperature, const PipelineOptions& opt);

// Grid values are temperatures (axis Temperature, coupling from cfg) or couplings
// (axis Coupling, temperature fixed). Per-point errors are recorded, not thrown.
std::vector<SweepPoint> sweep(SweepAxis axis, const std::vector<double>& grid, const SpectralConfig& cfg,
                              double fixed_temperature, const PipelineOptions& opt);

}  // namespace qbm
