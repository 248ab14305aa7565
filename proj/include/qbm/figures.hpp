#pragma once

// Tabular datasets behind the figures, the oracle comparison report and the
// single-point commands.

#include <string>
#include <utility>
#include <vector>

#include "qbm/config.hpp"

namespace qbm {

inline constexpr const char* kArtifactVersion = "1.0.0";

struct FigureDataset {
    std::string id;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // flagged rows keep their grid coordinates; missing values are NaN
    std::vector<std::string> errors;        // per row; empty when the row is valid
    std::vector<std::pair<std::string, std::string>> metadata;

    bool has_errors() const;
};

const std::vector<std::string>& figure_ids();

// Column schema of a dataset id (figure ids plus "state", "thermo", "sweep", "oracle-compare").
// Throws ConfigError for an unknown id.
const std::vector<std::string>& dataset_schema(const std::string& id);

// Throws if the columns differ from the schema, a row has the wrong width, or an
// unflagged row holds a non-finite value.
void validate_dataset(const FigureDataset& ds);

FigureDataset run_figure(const std::string& id, const RunConfig& cfg);
FigureDataset oracle_compare(const RunConfig& cfg);
FigureDataset state_report(const RunConfig& cfg);
FigureDataset thermo_report(const RunConfig& cfg);
FigureDataset sweep_report(const RunConfig& cfg);

// Default coupling grid for figure 1: a near-zero point, the weak-coupling zoom, then 0.1..3.
std::vector<double> figure1_couplings();

}  // namespace qbm
