#pragma once

// Run configuration: flat key=value file merged with command-line flags.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qbm/continuum_solver.hpp"
#include "qbm/thermo.hpp"

namespace qbm {

enum class OutputFormat { Csv, Json };

struct RunConfig {
    SpectralConfig spectral{0.5, 20.0};
    double temperature = 1.0;                 // single-point commands
    std::vector<double> temperatures;         // temperature grid
    std::vector<double> gammas;               // coupling grid
    bool temperatures_set = false;            // grid given explicitly; figures fall back to their own ranges otherwise
    bool gammas_set = false;
    SolverMethod method = SolverMethod::DiscretizeExtrapolate;
    std::size_t kc = 100;                     // base of the extrapolation ladder
    double omega_max = 200.0;                 // finite-oracle comparisons and the naive pipeline
    NodeRule rule = NodeRule::HalfLine;       // reference solver rule
    Continuation continuation = Continuation::Principal;
    int n_max = 60;
    std::size_t naive_kc = 400;
    std::vector<std::size_t> kc_ladder{100, 200, 400};
    SweepAxis axis = SweepAxis::Temperature;
    Pipeline pipeline = Pipeline::Exact;
    std::string out;                          // empty: stdout
    OutputFormat format = OutputFormat::Csv;
    bool sidecar = false;
    bool timestamp = true;

    SolverOptions solver_options() const;
    PipelineOptions pipeline_options() const;
};

using KeyValues = std::map<std::string, std::string>;

// Parses "key = value" lines; '#' starts a comment. Throws ConfigError on malformed lines.
KeyValues parse_key_values(const std::string& text);

// Builds a validated configuration; flag values take precedence over file values.
RunConfig parse_config(const KeyValues& file_values, const KeyValues& flag_values = {});
RunConfig parse_config_file(const std::string& path, const KeyValues& flag_values = {});

std::vector<std::string> known_config_keys();
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

// key=value echo of every setting, in a fixed order.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg);

std::string to_string(SolverMethod m);

}  // namespace qbm
