// qbm: reduced thermal state of a Brownian oscillator in a Lorentz-Drude bath.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbm/config.hpp"
#include "qbm/dataset.hpp"
#include "qbm/errors.hpp"
#include "qbm/figures.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ValueFlag {
    const char* key;
    const char* help;
};

const ValueFlag kValueFlags[] = {
    {"gamma", "coupling strength Gamma (units of omega_S)"},
    {"temperature", "temperature for single-point commands and the coupling sweep"},
    {"cutoff", "Lorentz-Drude cutoff omega_D"},
    {"kc", "base bath size of the k, 2k, 4k extrapolation ladder"},
    {"omega-max", "upper frequency of the uniform discretization (oracle comparison, naive pipeline)"},
    {"method", "inverse-laplace | discretize-extrapolate"},
    {"out", "output file (directory for 'figure all'); stdout when omitted"},
    {"format", "csv | json"},
    {"gammas", "comma-separated coupling grid"},
    {"temperatures", "comma-separated temperature grid"},
    {"t-min", "lower end of the log-spaced temperature grid"},
    {"t-max", "upper end of the log-spaced temperature grid"},
    {"t-count", "number of points of the log-spaced temperature grid"},
    {"axis", "sweep axis: temperature | coupling"},
    {"pipeline", "exact | drop-imaginary | drop-pairing | naive"},
    {"rule", "node rule of the extrapolation ladder and the oracle comparison: half-line | gauss-legendre"},
    {"continuation", "principal | upper | lower | disabled"},
    {"n-max", "Fock-space cutoff of the single-mode oracle cell"},
    {"naive-kc", "bath size of the naive pipeline"},
    {"kc-ladder", "comma-separated bath sizes for oracle-compare"},
};

int emit(const qbm::FigureDataset& ds, const qbm::RunConfig& cfg, const std::string& path) {
    const std::string text = qbm::emit_dataset(ds, cfg.format, path, cfg.sidecar, cfg.timestamp);
    std::cout << text;
    for (std::size_t i = 0; i < ds.rows.size(); ++i)
        if (!ds.errors[i].empty()) std::cerr << "qbm: " << ds.id << " row " << i << ": " << ds.errors[i] << '\n';
    return ds.has_errors() ? kExitNumerical : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduced thermal state and thermodynamics of a strongly coupled Brownian oscillator"};
    app.require_subcommand(1);
    std::map<std::string, std::string> values;
    std::string config_path, figure_id;
    bool no_timestamp = false, sidecar = false;

    for (const auto& f : kValueFlags) app.add_option(std::string("--") + f.key, values[f.key], f.help);
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp so identical runs give identical bytes");
    app.add_flag("--sidecar", sidecar, "also write <out>.json next to a CSV file");

    auto* state = app.add_subcommand("state", "moments, kernel, reduced Hamiltonian and Bogoliubov frame at one point");
    auto* thermo = app.add_subcommand("thermo", "internal energy and heat capacity at one point");
    auto* figure = app.add_subcommand("figure", "figure dataset: 1a 1b 2a 2b 3a 3b 4a 4b 5, or all");
    figure->add_option("id", figure_id, "figure id")->required();
    auto* compare = app.add_subcommand("oracle-compare", "continuum solver against finite-bath and Fock oracles");
    auto* sweep = app.add_subcommand("sweep", "thermodynamics along the temperature or coupling axis");
    for (auto* sub : {state, thermo, figure, compare, sweep}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    qbm::RunConfig cfg;
    try {
        qbm::KeyValues flags;
        for (const auto& f : kValueFlags)
            if (app.count(std::string("--") + f.key) > 0) flags[f.key] = values[f.key];
        if (no_timestamp) flags["no-timestamp"] = "true";
        if (sidecar) flags["sidecar"] = "true";
        cfg = config_path.empty() ? qbm::parse_config({}, flags) : qbm::parse_config_file(config_path, flags);
        if (figure->parsed() && figure_id != "all") qbm::dataset_schema(figure_id);
    } catch (const qbm::Error& e) {
        std::cerr << "qbm: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (state->parsed()) return emit(qbm::state_report(cfg), cfg, cfg.out);
        if (thermo->parsed()) return emit(qbm::thermo_report(cfg), cfg, cfg.out);
        if (compare->parsed()) return emit(qbm::oracle_compare(cfg), cfg, cfg.out);
        if (sweep->parsed()) return emit(qbm::sweep_report(cfg), cfg, cfg.out);
        if (figure_id != "all") return emit(qbm::run_figure(figure_id, cfg), cfg, cfg.out);

        if (!cfg.out.empty()) std::filesystem::create_directories(cfg.out);
        int rc = 0;
        for (const auto& id : qbm::figure_ids()) {
            std::string path;
            if (!cfg.out.empty())
                path = (std::filesystem::path(cfg.out) /
                        ("figure_" + id + (cfg.format == qbm::OutputFormat::Csv ? ".csv" : ".json")))
                           .string();
            rc = std::max(rc, emit(qbm::run_figure(id, cfg), cfg, path));
        }
        return rc;
    } catch (const qbm::Error& e) {
        std::cerr << "qbm: " << e.what() << '\n';
        return e.kind() == qbm::ErrorKind::ConfigError ? kExitConfig : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "qbm: " << e.what() << '\n';
        return kExitNumerical;
    }
}
