#pragma once

// Serialization of datasets: CSV with a '#' metadata preamble, or JSON.

#include <string>

#include "qbm/config.hpp"
#include "qbm/figures.hpp"

namespace qbm {

// %.12g; NaN becomes an empty field.
std::string format_number(double x);

// UTC, ISO 8601.
std::string current_timestamp();

std::string to_csv(const FigureDataset& ds, const std::string& timestamp = "");
std::string to_json(const FigureDataset& ds, const std::string& timestamp = "");

// Validates, then writes to path (or returns the text when path is empty). With sidecar
// set, a JSON copy goes to path + ".json". Throws ConfigError when a file cannot be written.
std::string emit_dataset(const FigureDataset& ds, OutputFormat format, const std::string& path, bool sidecar,
                         bool timestamp);

}  // namespace qbm
