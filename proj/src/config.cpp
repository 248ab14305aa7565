#include "qbm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qbm/errors.hpp"

namespace qbm {

namespace {

const std::vector<std::string> kKeys = {
    "gamma", "cutoff", "temperature", "temperatures", "t-min", "t-max", "t-count", "gammas",
    "method", "kc", "kc-ladder", "omega-max", "rule", "continuation", "n-max", "naive-kc",
    "axis", "pipeline", "out", "format", "sidecar", "no-timestamp",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& reason) {
    fail(ErrorKind::ConfigError, key + ": " + reason);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(x)) bad(key, "not a finite number: '" + v + "'");
        return x;
    } catch (const std::logic_error&) {
        bad(key, "not a number: '" + v + "'");
    }
}

long to_integer(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) bad(key, "not an integer: '" + v + "'");
        return x;
    } catch (const std::logic_error&) {
        bad(key, "not an integer: '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad(key, "expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.empty()) bad(key, "empty list");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (!(out[i] > out[i - 1])) bad(key, "values must be strictly increasing");
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    os.precision(12);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

}  // namespace

std::string to_string(SolverMethod m) {
    return m == SolverMethod::InverseLaplace ? "inverse-laplace" : "discretize-extrapolate";
}

std::vector<std::string> known_config_keys() { return kKeys; }

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    if (count == 1) return {lo};
    std::vector<double> out(count);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * double(i) / double(count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail(ErrorKind::ConfigError, "line " + std::to_string(lineno) + ": empty key");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

RunConfig parse_config(const KeyValues& file_values, const KeyValues& flag_values) {
    KeyValues kv = file_values;
    for (const auto& [k, v] : flag_values) kv[k] = v;
    for (const auto& [k, v] : kv)
        if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end()) bad(k, "unknown key");

    RunConfig c;
    c.gammas = {0.1, 0.3, 0.5, 0.6, 1.0, 2.0, 3.0};
    double t_min = 0.05, t_max = 3.0;
    long t_count = 60;
    auto has = [&](const char* k) { return kv.count(k) > 0; };

    if (has("gamma")) c.spectral.coupling = to_double("gamma", kv["gamma"]);
    if (!(c.spectral.coupling >= 0.0)) bad("gamma", "coupling strength must be nonnegative");
    if (has("cutoff")) c.spectral.cutoff = to_double("cutoff", kv["cutoff"]);
    if (!(c.spectral.cutoff > 0.0)) bad("cutoff", "cutoff must be positive");
    if (has("temperature")) c.temperature = to_double("temperature", kv["temperature"]);
    if (!(c.temperature > 0.0)) bad("temperature", "temperature must be positive");

    if (has("t-min")) t_min = to_double("t-min", kv["t-min"]);
    if (has("t-max")) t_max = to_double("t-max", kv["t-max"]);
    if (has("t-count")) t_count = to_integer("t-count", kv["t-count"]);
    if (!(t_min > 0.0)) bad("t-min", "must be positive");
    if (!(t_max >= t_min)) bad("t-max", "must not be below t-min");
    if (t_count < 1) bad("t-count", "must be at least 1");
    if (t_count > 1 && !(t_max > t_min)) bad("t-max", "must exceed t-min for more than one point");
    c.temperatures = log_spaced(t_min, t_max, static_cast<std::size_t>(t_count));
    c.temperatures_set = has("t-min") || has("t-max") || has("t-count");
    if (has("temperatures")) {
        c.temperatures = to_list("temperatures", kv["temperatures"]);
        c.temperatures_set = true;
        if (!(c.temperatures.front() > 0.0)) bad("temperatures", "values must be positive");
    }
    if (has("gammas")) {
        c.gammas = to_list("gammas", kv["gammas"]);
        c.gammas_set = true;
        if (!(c.gammas.front() >= 0.0)) bad("gammas", "values must be nonnegative");
    }

    if (has("method")) {
        const auto& v = kv["method"];
        if (v == "inverse-laplace") c.method = SolverMethod::InverseLaplace;
        else if (v == "discretize-extrapolate") c.method = SolverMethod::DiscretizeExtrapolate;
        else bad("method", "expected inverse-laplace or discretize-extrapolate");
    }
    if (has("kc")) {
        const long k = to_integer("kc", kv["kc"]);
        if (k < 1) bad("kc", "must be at least 1");
        c.kc = static_cast<std::size_t>(k);
    }
    if (has("kc-ladder")) {
        c.kc_ladder.clear();
        for (double x : to_list("kc-ladder", kv["kc-ladder"])) {
            if (x < 1.0 || x != std::floor(x)) bad("kc-ladder", "entries must be positive integers");
            c.kc_ladder.push_back(static_cast<std::size_t>(x));
        }
    }
    if (has("omega-max")) c.omega_max = to_double("omega-max", kv["omega-max"]);
    if (!(c.omega_max > 0.0)) bad("omega-max", "must be positive");
    if (has("rule")) {
        const auto& v = kv["rule"];
        if (v == "half-line") c.rule = NodeRule::HalfLine;
        else if (v == "gauss-legendre") c.rule = NodeRule::GaussLegendre;
        else bad("rule", "expected half-line or gauss-legendre");
    }
    if (has("continuation")) {
        const auto& v = kv["continuation"];
        if (v == "principal") c.continuation = Continuation::Principal;
        else if (v == "upper") c.continuation = Continuation::Upper;
        else if (v == "lower") c.continuation = Continuation::Lower;
        else if (v == "disabled") c.continuation = Continuation::Disabled;
        else bad("continuation", "expected principal, upper, lower or disabled");
    }
    if (has("n-max")) {
        const long n = to_integer("n-max", kv["n-max"]);
        if (n < 40) bad("n-max", "must be at least 40");
        c.n_max = static_cast<int>(n);
    }
    if (has("naive-kc")) {
        const long k = to_integer("naive-kc", kv["naive-kc"]);
        if (k < 1) bad("naive-kc", "must be at least 1");
        c.naive_kc = static_cast<std::size_t>(k);
    }
    if (has("axis")) {
        const auto& v = kv["axis"];
        if (v == "temperature") c.axis = SweepAxis::Temperature;
        else if (v == "coupling") c.axis = SweepAxis::Coupling;
        else bad("axis", "expected temperature or coupling");
    }
    if (has("pipeline")) {
        const auto& v = kv["pipeline"];
        if (v == "exact") c.pipeline = Pipeline::Exact;
        else if (v == "drop-imaginary") c.pipeline = Pipeline::DropImaginary;
        else if (v == "drop-pairing") c.pipeline = Pipeline::DropPairing;
        else if (v == "naive") c.pipeline = Pipeline::Naive;
        else bad("pipeline", "expected exact, drop-imaginary, drop-pairing or naive");
    }
    if (has("out")) c.out = kv["out"];
    if (has("format")) {
        const auto& v = kv["format"];
        if (v == "csv") c.format = OutputFormat::Csv;
        else if (v == "json") c.format = OutputFormat::Json;
        else bad("format", "expected csv or json");
    }
    if (has("sidecar")) c.sidecar = to_bool("sidecar", kv["sidecar"]);
    if (has("no-timestamp")) c.timestamp = !to_bool("no-timestamp", kv["no-timestamp"]);
    return c;
}

RunConfig parse_config_file(const std::string& path, const KeyValues& flag_values) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ConfigError, "config: cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(parse_key_values(ss.str()), flag_values);
}

SolverOptions RunConfig::solver_options() const {
    SolverOptions o;
    o.method = method;
    o.base_kc = kc;
    o.rule = rule;
    o.omega_max = rule == NodeRule::GaussLegendre ? omega_max : 0.0;
    o.continuation = continuation;
    return o;
}

PipelineOptions RunConfig::pipeline_options() const {
    PipelineOptions o;
    o.pipeline = pipeline;
    o.solver = solver_options();
    o.naive_kc = naive_kc;
    o.naive_omega_max = omega_max;
    return o;
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& c) {
    static const char* rules[] = {"gauss-legendre", "half-line"};
    static const char* conts[] = {"principal", "upper", "lower", "disabled"};
    static const char* pipes[] = {"exact", "drop-imaginary", "drop-pairing", "naive"};
    return {
        {"gamma", fmt(c.spectral.coupling)},
        {"cutoff", fmt(c.spectral.cutoff)},
        {"temperature", fmt(c.temperature)},
        {"temperatures", join(c.temperatures)},
        {"gammas", join(c.gammas)},
        {"method", to_string(c.method)},
        {"kc", std::to_string(c.kc)},
        {"kc-ladder", join(c.kc_ladder)},
        {"omega-max", fmt(c.omega_max)},
        {"rule", rules[static_cast<int>(c.rule)]},
        {"continuation", conts[static_cast<int>(c.continuation)]},
        {"n-max", std::to_string(c.n_max)},
        {"naive-kc", std::to_string(c.naive_kc)},
        {"axis", c.axis == SweepAxis::Temperature ? "temperature" : "coupling"},
        {"pipeline", pipes[static_cast<int>(c.pipeline)]},
    };
}

}  // namespace qbm
