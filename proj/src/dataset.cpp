#include "qbm/dataset.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qbm/errors.hpp"

namespace qbm {

std::string format_number(double x) {
    if (std::isnan(x)) return "";
    if (x == 0.0) x = 0.0;  // no negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string current_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string to_csv(const FigureDataset& ds, const std::string& timestamp) {
    std::ostringstream os;
    for (const auto& [k, v] : ds.metadata) os << "# " << k << ": " << v << '\n';
    if (!timestamp.empty()) os << "# timestamp: " << timestamp << '\n';
    for (const auto& c : ds.columns) os << c << ',';
    os << "error\n";
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        for (double x : ds.rows[i]) os << format_number(x) << ',';
        os << ds.errors[i] << '\n';
    }
    return os.str();
}

std::string to_json(const FigureDataset& ds, const std::string& timestamp) {
    nlohmann::ordered_json j;
    j["dataset"] = ds.id;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : ds.metadata) meta[k] = v;
    if (!timestamp.empty()) meta["timestamp"] = timestamp;
    j["metadata"] = meta;
    j["columns"] = ds.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < ds.columns.size(); ++c) {
            const double x = ds.rows[i][c];
            if (std::isfinite(x)) r[ds.columns[c]] = x;
            else r[ds.columns[c]] = nullptr;
        }
        r["error"] = ds.errors[i].empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(ds.errors[i]);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::ConfigError, "out: cannot open '" + path + "' for writing");
    out << text;
    if (!out) fail(ErrorKind::ConfigError, "out: write to '" + path + "' failed");
}

}  // namespace

std::string emit_dataset(const FigureDataset& ds, OutputFormat format, const std::string& path, bool sidecar,
                         bool timestamp) {
    validate_dataset(ds);
    const std::string stamp = timestamp ? current_timestamp() : "";
    const std::string text = format == OutputFormat::Csv ? to_csv(ds, stamp) : to_json(ds, stamp);
    if (path.empty()) return text;
    write_file(path, text);
    if (sidecar && format == OutputFormat::Csv) write_file(path + ".json", to_json(ds, stamp));
    return "";
}

}  // namespace qbm
