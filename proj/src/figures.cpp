#include "qbm/figures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "qbm/errors.hpp"
#include "qbm/finite_oracle.hpp"
#include "qbm/gibbs_state.hpp"
#include "qbm/pipeline.hpp"
#include "qbm/thermo.hpp"

namespace qbm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kFigure1Temperature = 10.0;
constexpr double kEnergyTolerance = 1e-8;      // U_H vs U_Z, relative
constexpr double kHeatTolerance = 1e-4;        // C from dU/dT vs C from Z, relative
constexpr double kFockTolerance = 1e-6;
constexpr double kDerivativeStep = 1e-3;       // relative temperature step for dU/dT

const std::map<std::string, std::vector<std::string>>& schemas() {
    static const std::map<std::string, std::vector<std::string>> s = {
        {"1a", {"gamma", "n", "abs_s"}},
        {"1b", {"gamma", "omega_r", "abs_Delta", "omega_bar"}},
        {"2a", {"T", "n", "abs_s"}},
        {"2b", {"T", "omega_r", "abs_Delta"}},
        {"3a", {"T", "gamma", "U_from_H", "U_from_Z"}},
        {"3b", {"T", "gamma", "C_from_H", "C_from_Z"}},
        {"4a", {"T", "gamma", "C_incomplete", "C_exact"}},
        {"4b", {"T", "gamma", "C_incomplete", "C_exact"}},
        {"5", {"T", "gamma", "C_naive", "C_exact"}},
        {"state", {"gamma", "T", "n", "s_re", "s_im", "Omega", "Pi_re", "Pi_im", "omega_r", "Delta_re", "Delta_im",
                   "omega_bar", "u_re", "u_im", "v_re", "v_im", "n_quasi", "Z_r"}},
        {"thermo", {"gamma", "T", "U", "C", "Z_r"}},
        {"sweep", {"T", "gamma", "U", "C", "Z_r"}},
        {"oracle-compare", {"reference", "gamma", "T", "kc", "dn", "ds", "dlnZ", "monotone"}},
    };
    return s;
}

struct Row {
    std::vector<double> values;
    std::string error;
};

void add_error(std::string& acc, const std::string& kind) {
    if (acc.find(kind) != std::string::npos) return;
    acc += acc.empty() ? kind : ";" + kind;
}

std::string error_kind(const std::exception& e) {
    if (const auto* q = dynamic_cast<const Error*>(&e)) return std::string(to_string(q->kind()));
    return std::string(to_string(ErrorKind::NoConvergence));
}

// Runs fn, which fills values in place; any exception flags the row.
Row guarded(std::vector<double> values, const std::function<void(std::vector<double>&)>& fn) {
    Row r{std::move(values), {}};
    try {
        fn(r.values);
    } catch (const std::exception& e) {
        add_error(r.error, error_kind(e));
    }
    return r;
}

FigureDataset make_dataset(const std::string& id, const RunConfig& cfg, std::vector<Row> rows) {
    FigureDataset ds;
    ds.id = id;
    ds.columns = dataset_schema(id);
    for (auto& r : rows) {
        ds.rows.push_back(std::move(r.values));
        ds.errors.push_back(std::move(r.error));
    }
    ds.metadata.emplace_back("dataset", id);
    ds.metadata.emplace_back("version", kArtifactVersion);
    for (auto& kv : describe(cfg)) ds.metadata.push_back(kv);
    const SolverOptions so = cfg.solver_options();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", so.quad.rel_tol);
    ds.metadata.emplace_back("quadrature-rel-tol", buf);
    std::snprintf(buf, sizeof buf, "%g", so.bromwich.tolerance);
    ds.metadata.emplace_back("inversion-tol", buf);
    ds.metadata.emplace_back("inversion-order", std::to_string(so.bromwich.order));
    ds.metadata.emplace_back("extrapolation-ladder", std::to_string(so.base_kc) + "," + std::to_string(2 * so.base_kc) +
                                                         "," + std::to_string(4 * so.base_kc));
    validate_dataset(ds);
    return ds;
}

SpectralConfig with_coupling(const RunConfig& cfg, double gamma) {
    SpectralConfig c = cfg.spectral;
    c.coupling = gamma;
    return c;
}

std::vector<double> figure2_temperatures(const RunConfig& cfg) {
    return cfg.temperatures_set ? cfg.temperatures : log_spaced(0.05, 20.0, 40);
}

std::vector<double> figure5_temperatures(const RunConfig& cfg) {
    std::set<double> all(cfg.temperatures.begin(), cfg.temperatures.end());
    if (!cfg.temperatures_set)
        for (double t : log_spaced(0.01, 0.2, 12)) all.insert(t);  // low-temperature zoom
    return {all.begin(), all.end()};
}

std::vector<Row> coupling_rows(const RunConfig& cfg, const std::vector<double>& gammas, double temperature,
                               bool frequencies) {
    const SolverOptions so = cfg.solver_options();
    return parallel_map<Row>(gammas.size(), [&](std::size_t i) {
        const double g = gammas[i];
        std::vector<double> init = frequencies ? std::vector<double>{g, kNaN, kNaN, kNaN} : std::vector<double>{g, kNaN, kNaN};
        return guarded(init, [&](std::vector<double>& v) {
            const StatePoint s = evaluate_state(with_coupling(cfg, g), temperature, so);
            if (frequencies) {
                v = {g, s.hamiltonian.omega, std::abs(s.hamiltonian.pairing), s.frame.omega_bar};
            } else {
                v = {g, s.moments.n, std::abs(s.moments.s)};
            }
        });
    });
}

std::vector<Row> temperature_rows(const RunConfig& cfg, const std::vector<double>& temps, bool frequencies) {
    const SolverOptions so = cfg.solver_options();
    return parallel_map<Row>(temps.size(), [&](std::size_t i) {
        const double t = temps[i];
        return guarded({t, kNaN, kNaN}, [&](std::vector<double>& v) {
            const StatePoint s = evaluate_state(cfg.spectral, t, so);
            if (frequencies) v = {t, s.hamiltonian.omega, std::abs(s.hamiltonian.pairing)};
            else v = {t, s.moments.n, std::abs(s.moments.s)};
        });
    });
}

double hamiltonian_energy(const SpectralConfig& c, double t, const SolverOptions& so) {
    const StatePoint s = evaluate_state(c, t, so);
    return internal_energy_hamiltonian(s.hamiltonian, s.moments);
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

// Rows over gamma (outer) x temperature (inner) for figures 3-5.
std::vector<Row> grid_rows(const std::string& id, const RunConfig& cfg, const std::vector<double>& temps) {
    const SolverOptions so = cfg.solver_options();
    const auto& gammas = cfg.gammas;
    std::vector<ModeList> naive_modes(gammas.size());
    std::vector<std::string> naive_errors(gammas.size());
    if (id == "5") {
        for (std::size_t g = 0; g < gammas.size(); ++g) {
            try {
                naive_modes[g] = discretize(with_coupling(cfg, gammas[g]), cfg.naive_kc, cfg.omega_max);
            } catch (const std::exception& e) {
                naive_errors[g] = error_kind(e);
            }
        }
    }
    const std::size_t nt = temps.size();
    return parallel_map<Row>(gammas.size() * nt, [&](std::size_t k) {
        const std::size_t gi = k / nt;
        const double g = gammas[gi], t = temps[k % nt];
        const SpectralConfig c = with_coupling(cfg, g);
        Row row{{t, g, kNaN, kNaN}, {}};
        if (id == "5") {
            if (!naive_errors[gi].empty()) {
                add_error(row.error, naive_errors[gi]);
            } else {
                Row naive = guarded({}, [&](std::vector<double>&) { row.values[2] = naive_heat_capacity(naive_modes[gi], 1.0 / t); });
                add_error(row.error, naive.error);
            }
        }
        Row exact = guarded({}, [&](std::vector<double>&) {
            const StatePoint s = evaluate_state(c, t, so);
            const double wb = s.frame.omega_bar;
            if (id == "3a") {
                const double uh = internal_energy_hamiltonian(s.hamiltonian, s.moments);
                const double uz = internal_energy_partition(wb, t);
                row.values[2] = uh;
                row.values[3] = uz;
                if (!close(uh, uz, kEnergyTolerance)) add_error(row.error, "Inconsistent");
            } else if (id == "3b") {
                const double h = kDerivativeStep * t;
                const double ch = (hamiltonian_energy(c, t + h, so) - hamiltonian_energy(c, t - h, so)) / (2.0 * h);
                const double cz = heat_capacity_exact(wb, t);
                row.values[2] = ch;
                row.values[3] = cz;
                if (!close(ch, cz, kHeatTolerance)) add_error(row.error, "Inconsistent");
            } else if (id == "4a" || id == "4b") {
                const auto mode = id == "4a" ? IncompleteMode::DropImaginary : IncompleteMode::DropPairing;
                row.values[2] = heat_capacity_incomplete(mode, s.hamiltonian, t);
                row.values[3] = heat_capacity_exact(wb, t);
            } else {
                row.values[3] = heat_capacity_exact(wb, t);
            }
        });
        add_error(row.error, exact.error);
        return row;
    });
}

}  // namespace

bool FigureDataset::has_errors() const {
    return std::any_of(errors.begin(), errors.end(), [](const std::string& e) { return !e.empty(); });
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b", "5"};
    return ids;
}

const std::vector<std::string>& dataset_schema(const std::string& id) {
    const auto it = schemas().find(id);
    if (it == schemas().end()) fail(ErrorKind::ConfigError, "figure: unknown dataset id '" + id + "'");
    return it->second;
}

void validate_dataset(const FigureDataset& ds) {
    const auto& schema = dataset_schema(ds.id);
    if (ds.columns != schema) fail(ErrorKind::ConfigError, "dataset " + ds.id + ": columns do not match schema");
    if (ds.errors.size() != ds.rows.size())
        fail(ErrorKind::ConfigError, "dataset " + ds.id + ": row flags do not match rows");
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        if (ds.rows[i].size() != schema.size())
            fail(ErrorKind::ConfigError, "dataset " + ds.id + ": row " + std::to_string(i) + " has wrong width");
        if (ds.errors[i].empty())
            for (double x : ds.rows[i])
                if (!std::isfinite(x))
                    fail(ErrorKind::ConfigError,
                         "dataset " + ds.id + ": row " + std::to_string(i) + " has a missing value without a flag");
    }
}

std::vector<double> figure1_couplings() {
    std::vector<double> g{1e-6};
    for (int i = 1; i <= 9; ++i) g.push_back(0.005 * i);
    for (int i = 1; i <= 30; ++i) g.push_back(0.1 * i);
    return g;
}

FigureDataset run_figure(const std::string& id, const RunConfig& cfg) {
    dataset_schema(id);
    if (id == "1a" || id == "1b") {
        const auto gammas = cfg.gammas_set ? cfg.gammas : figure1_couplings();
        return make_dataset(id, cfg, coupling_rows(cfg, gammas, kFigure1Temperature, id == "1b"));
    }
    if (id == "2a" || id == "2b") return make_dataset(id, cfg, temperature_rows(cfg, figure2_temperatures(cfg), id == "2b"));
    if (id == "3a" || id == "3b" || id == "4a" || id == "4b") return make_dataset(id, cfg, grid_rows(id, cfg, cfg.temperatures));
    if (id == "5") return make_dataset(id, cfg, grid_rows(id, cfg, figure5_temperatures(cfg)));
    fail(ErrorKind::ConfigError, "figure: '" + id + "' is not a figure id");
}

FigureDataset oracle_compare(const RunConfig& cfg) {
    std::vector<double> gammas{0.0};
    if (cfg.gammas_set) {
        for (double g : cfg.gammas)
            if (g != 0.0) gammas.push_back(g);
    } else if (cfg.spectral.coupling != 0.0) {
        gammas.push_back(cfg.spectral.coupling);
    }
    const std::vector<double> temps = cfg.temperatures_set ? cfg.temperatures : std::vector<double>{cfg.temperature};
    const auto& ladder = cfg.kc_ladder;
    const SolverOptions so = cfg.solver_options();

    struct Cell {
        double gamma, t;
    };
    std::vector<Cell> cells;
    for (double g : gammas)
        for (double t : temps) cells.push_back({g, t});

    auto cell_rows = parallel_map<std::vector<Row>>(cells.size(), [&](std::size_t i) {
        const Cell cell = cells[i];
        const SpectralConfig c = with_coupling(cfg, cell.gamma);
        const double beta = 1.0 / cell.t;
        std::vector<Row> rows;
        for (std::size_t kc : ladder)
            rows.push_back({{0.0, cell.gamma, cell.t, double(kc), kNaN, kNaN, kNaN, kNaN}, {}});
        Moments cont;
        double cont_lnz = 0.0;
        try {
            cont = kernel_to_moments(solve_kernel(c, beta, so));
            cont_lnz = std::log(reduced_partition(cont));
        } catch (const std::exception& e) {
            for (auto& r : rows) add_error(r.error, error_kind(e));
            return rows;
        }
        std::vector<double> dn, ds;
        for (std::size_t k = 0; k < ladder.size(); ++k) {
            try {
                const FiniteState fs = finite_oracle_state(discretize(c, ladder[k], cfg.omega_max, cfg.rule), beta);
                rows[k].values[4] = std::abs(cont.n - fs.moments.n);
                rows[k].values[5] = std::abs(cont.s - fs.moments.s);
                rows[k].values[6] = std::abs(cont_lnz - fs.log_z_reduced);
                dn.push_back(rows[k].values[4]);
                ds.push_back(rows[k].values[5]);
            } catch (const std::exception& e) {
                add_error(rows[k].error, error_kind(e));
            }
        }
        bool monotone = dn.size() == ladder.size();
        for (std::size_t k = 1; monotone && k < dn.size(); ++k) {
            // both already at the continuum solve's own accuracy
            const bool converged = std::max(dn[k - 1], ds[k - 1]) < 1e-9;
            if (!converged && !(dn[k] < dn[k - 1] && ds[k] < ds[k - 1])) monotone = false;
        }
        for (auto& r : rows) {
            r.values[7] = monotone ? 1.0 : 0.0;
            if (!monotone && r.error.empty()) add_error(r.error, "NotMonotone");
        }
        return rows;
    });

    std::vector<Row> rows;
    for (auto& cr : cell_rows)
        for (auto& r : cr) rows.push_back(std::move(r));

    // Single-mode cell against the Fock-space oracle; the gamma column holds the mode coupling.
    const ModeList single{{2.0}, {0.3}};
    const double fock_beta = 1.0;
    rows.push_back(guarded({1.0, 0.3, 1.0 / fock_beta, 1.0, kNaN, kNaN, kNaN, kNaN}, [&](std::vector<double>& v) {
        const FiniteState g = finite_oracle_state(single, fock_beta);
        const FockResult f = fock_oracle(single, fock_beta, cfg.n_max);
        v[4] = std::abs(g.moments.n - f.moments.n);
        v[5] = std::abs(g.moments.s - f.moments.s);
        v[6] = std::abs(g.log_z_reduced - f.log_z_reduced);
        v[7] = 1.0;
    }));
    Row& fock = rows.back();
    if (fock.error.empty() && !(std::max({fock.values[4], fock.values[5], fock.values[6]}) < kFockTolerance))
        fock.error = "Mismatch";
    return make_dataset("oracle-compare", cfg, std::move(rows));
}

FigureDataset state_report(const RunConfig& cfg) {
    const double g = cfg.spectral.coupling, t = cfg.temperature;
    std::vector<double> init(dataset_schema("state").size(), kNaN);
    init[0] = g;
    init[1] = t;
    std::vector<Row> rows{guarded(init, [&](std::vector<double>& v) {
        const StatePoint s = evaluate_state(cfg.spectral, t, cfg.solver_options());
        v = {g,
             t,
             s.moments.n,
             s.moments.s.real(),
             s.moments.s.imag(),
             s.kernel.omega.real(),
             s.kernel.pair.real(),
             s.kernel.pair.imag(),
             s.hamiltonian.omega,
             s.hamiltonian.pairing.real(),
             s.hamiltonian.pairing.imag(),
             s.frame.omega_bar,
             s.frame.u.real(),
             s.frame.u.imag(),
             s.frame.v.real(),
             s.frame.v.imag(),
             s.quasiparticle_occupation,
             s.z_reduced};
    })};
    return make_dataset("state", cfg, std::move(rows));
}

FigureDataset thermo_report(const RunConfig& cfg) {
    const double g = cfg.spectral.coupling, t = cfg.temperature;
    std::vector<Row> rows{guarded({g, t, kNaN, kNaN, kNaN}, [&](std::vector<double>& v) {
        const ThermoPoint p = evaluate_thermo(cfg.spectral, t, cfg.pipeline_options());
        v = {g, t, p.energy, p.heat_capacity, p.z_reduced};
    })};
    return make_dataset("thermo", cfg, std::move(rows));
}

FigureDataset sweep_report(const RunConfig& cfg) {
    const bool by_t = cfg.axis == SweepAxis::Temperature;
    const auto& grid = by_t ? cfg.temperatures : cfg.gammas;
    const auto points = sweep(cfg.axis, grid, cfg.spectral, cfg.temperature, cfg.pipeline_options());
    std::vector<Row> rows;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& sp = points[i];
        const double t = by_t ? grid[i] : cfg.temperature;
        const double g = by_t ? cfg.spectral.coupling : grid[i];
        if (sp.error) rows.push_back({{t, g, kNaN, kNaN, kNaN}, std::string(to_string(*sp.error))});
        else rows.push_back({{t, g, sp.point.energy, sp.point.heat_capacity, sp.point.z_reduced}, {}});
    }
    return make_dataset("sweep", cfg, std::move(rows));
}

}  // namespace qbm
