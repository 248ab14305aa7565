#include "qbm/thermo.hpp"

#include <cmath>

#include "qbm/finite_oracle.hpp"
#include "qbm/pipeline.hpp"

namespace qbm {

namespace {

// (x csch x)^2 without overflow
double x_csch_sq(double x) {
    if (x == 0.0) return 1.0;
    const double ax = std::abs(x);
    if (ax > 20.0) {
        const double e = std::exp(-ax);
        const double r = 2.0 * ax * e / (1.0 - e * e);
        return r * r;
    }
    const double r = ax / std::sinh(ax);
    return r * r;
}

// (w/2) coth(beta w / 2)
double mode_energy(double w, double beta) { return 0.5 * w / std::tanh(0.5 * beta * w); }

}  // namespace

double internal_energy_hamiltonian(const ReducedHamiltonian& h, const Moments& m) {
    return 0.5 * (h.omega * (2.0 * m.n + 1.0) + 2.0 * (h.pairing * m.s).real());
}

double internal_energy_partition(double omega_bar, double temperature) {
    return mode_energy(omega_bar, 1.0 / temperature);
}

double internal_energy_partition_numeric(double omega_bar, double temperature) {
    const double beta = 1.0 / temperature;
    const double h = beta * 1e-5;
    auto log_z = [&](double b) {
        const double x = 0.5 * b * omega_bar;
        return -(x + std::log1p(-std::exp(-2.0 * x)));
    };
    return -(log_z(beta + h) - log_z(beta - h)) / (2.0 * h);
}

double heat_capacity_exact(double omega_bar, double temperature) {
    return x_csch_sq(0.5 * omega_bar / temperature);
}

double heat_capacity_incomplete(IncompleteMode mode, const ReducedHamiltonian& h, double temperature) {
    double w = kSystemFrequency;
    if (mode == IncompleteMode::DropImaginary) {
        const double re = h.pairing.real();
        const double w2 = h.omega * h.omega - re * re;
        if (!(w2 > 0.0)) fail(ErrorKind::UnstableReducedPotential, "omega_S^r^2 - (Re Delta)^2 <= 0");
        w = std::sqrt(w2);
    }
    return heat_capacity_exact(w, temperature);
}

double naive_internal_energy(const ModeList& modes, double beta) {
    double u = 0.0;
    for (double w : normal_mode_frequencies(modes)) u += mode_energy(w, beta);
    for (double w : modes.frequency) u -= mode_energy(w, beta);
    return u;
}

double naive_heat_capacity(const ModeList& modes, double beta) {
    double c = 0.0;
    for (double w : normal_mode_frequencies(modes)) c += x_csch_sq(0.5 * beta * w);
    for (double w : modes.frequency) c -= x_csch_sq(0.5 * beta * w);
    return c;
}

ThermoPoint evaluate_thermo(const SpectralConfig& cfg, double temperature, const PipelineOptions& opt) {
    ThermoPoint p;
    p.temperature = temperature;
    p.gamma = cfg.coupling;
    if (opt.pipeline == Pipeline::Naive) {
        const ModeList modes = discretize(cfg, opt.naive_kc, opt.naive_omega_max);
        const double beta = 1.0 / temperature;
        p.energy = naive_internal_energy(modes, beta);
        p.heat_capacity = naive_heat_capacity(modes, beta);
        p.z_reduced = std::exp(log_partition_total(modes, beta) - log_partition_env(modes, beta));
        return p;
    }
    const StatePoint s = evaluate_state(cfg, temperature, opt.solver);
    p.energy = internal_energy_hamiltonian(s.hamiltonian, s.moments);
    p.z_reduced = s.z_reduced;
    switch (opt.pipeline) {
        case Pipeline::DropImaginary:
            p.heat_capacity = heat_capacity_incomplete(IncompleteMode::DropImaginary, s.hamiltonian, temperature);
            break;
        case Pipeline::DropPairing:
            p.heat_capacity = heat_capacity_incomplete(IncompleteMode::DropPairing, s.hamiltonian, temperature);
            break;
        default: p.heat_capacity = heat_capacity_exact(s.frame.omega_bar, temperature);
    }
    return p;
}

std::vector<SweepPoint> sweep(SweepAxis axis, const std::vector<double>& grid, const SpectralConfig& cfg,
                              double fixed_temperature, const PipelineOptions& opt) {
    if (grid.empty()) fail(ErrorKind::InvalidGrid, "sweep grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) && !(axis == SweepAxis::Coupling && grid[i] == 0.0))
            fail(ErrorKind::InvalidGrid, "sweep grid values must be positive");
        if (i > 0 && !(grid[i] > grid[i - 1])) fail(ErrorKind::InvalidGrid, "sweep grid must be strictly increasing");
    }
    return parallel_map<SweepPoint>(grid.size(), [&](std::size_t i) {
        SpectralConfig c = cfg;
        double t = fixed_temperature;
        if (axis == SweepAxis::Temperature) t = grid[i];
        else c.coupling = grid[i];
        SweepPoint sp;
        sp.point.temperature = t;
        sp.point.gamma = c.coupling;
        try {
            sp.point = evaluate_thermo(c, t, opt);
        } catch (const Error& e) {
            sp.error = e.kind();
            sp.message = e.what();
        } catch (const std::exception& e) {
            sp.error = ErrorKind::NoConvergence;
            sp.message = e.what();
        }
        return sp;
    });
}

}  // namespace qbm
