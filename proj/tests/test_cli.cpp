#include <cmath>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "cli_util.hpp"
#include "doctest.h"
#include "json.hpp"
#include "qbm/config.hpp"
#include "qbm/dataset.hpp"
#include "qbm/figures.hpp"
#include "test_util.hpp"

using namespace qbm;

TEST_CASE("defaults") {
    const RunConfig c = parse_config({});
    CHECK(c.spectral.coupling == 0.5);
    CHECK(c.spectral.cutoff == 20.0);
    REQUIRE(c.temperatures.size() == 60);
    CHECK(c.temperatures.front() == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(c.temperatures.back() == doctest::Approx(3.0).epsilon(1e-14));
    for (std::size_t i = 1; i < c.temperatures.size(); ++i)
        CHECK(c.temperatures[i] / c.temperatures[i - 1] == doctest::Approx(std::pow(60.0, 1.0 / 59.0)).epsilon(1e-12));
    CHECK(c.method == SolverMethod::DiscretizeExtrapolate);
    CHECK(c.format == OutputFormat::Csv);
    CHECK(c.timestamp);
    CHECK_FALSE(c.temperatures_set);
    CHECK_FALSE(c.gammas_set);
}

TEST_CASE("validation errors name the key") {
    auto message = [](const KeyValues& kv) -> std::string {
        try {
            parse_config(kv);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ConfigError);
            return e.what();
        }
        return "";
    };
    CHECK(message({{"gamma", "-0.1"}}).find("gamma") != std::string::npos);
    CHECK(message({{"cutoff", "0"}}).find("cutoff") != std::string::npos);
    CHECK(message({{"temperature", "abc"}}).find("temperature") != std::string::npos);
    CHECK(message({{"temperatures", "1,0.5"}}).find("temperatures") != std::string::npos);
    CHECK(message({{"method", "talbot"}}).find("method") != std::string::npos);
    CHECK(message({{"n-max", "10"}}).find("n-max") != std::string::npos);
    CHECK(message({{"bogus", "1"}}).find("unknown key") != std::string::npos);
    CHECK(message({{"format", "xml"}}).find("format") != std::string::npos);
}

TEST_CASE("key-value files and precedence") {
    const KeyValues kv = parse_key_values("# comment\ngamma = 0.02\n\ncutoff=15   # trailing\ntemperatures = 0.5, 1, 2\n");
    CHECK(kv.at("gamma") == "0.02");
    CHECK(kv.at("cutoff") == "15");
    const RunConfig c = parse_config(kv, {{"gamma", "0.03"}});
    CHECK(c.spectral.coupling == 0.03);
    CHECK(c.spectral.cutoff == 15.0);
    CHECK(c.temperatures == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(c.temperatures_set);
    CHECK_KIND(parse_key_values("gamma 0.5\n"), ErrorKind::ConfigError);

    const auto dir = scratch_dir("cfg");
    std::ofstream(dir / "run.cfg") << "gamma = 0.04\nformat = json\n";
    const RunConfig f = parse_config_file((dir / "run.cfg").string(), {{"format", "csv"}});
    CHECK(f.spectral.coupling == 0.04);
    CHECK(f.format == OutputFormat::Csv);
    CHECK_KIND(parse_config_file((dir / "missing.cfg").string()), ErrorKind::ConfigError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("dataset schemas and writers") {
    for (const std::string& id : figure_ids()) CHECK_FALSE(dataset_schema(id).empty());
    CHECK(dataset_schema("3b") == std::vector<std::string>{"T", "gamma", "C_from_H", "C_from_Z"});
    CHECK_KIND(dataset_schema("9z"), ErrorKind::ConfigError);

    FigureDataset ds;
    ds.id = "3b";
    ds.columns = dataset_schema("3b");
    ds.rows = {{0.5, 0.1, 0.2, 0.2}, {1.0, 0.1, std::nan(""), std::nan("")}};
    ds.errors = {"", "Instability"};
    ds.metadata = {{"dataset", "3b"}};
    CHECK_NOTHROW(validate_dataset(ds));
    const std::string csv = to_csv(ds);
    CHECK(csv.find("T,gamma,C_from_H,C_from_Z,error\n") != std::string::npos);
    CHECK(csv.find("1,0.1,,,Instability\n") != std::string::npos);
    CHECK(csv.find("timestamp") == std::string::npos);
    CHECK(to_csv(ds, "2026-01-01T00:00:00Z").find("# timestamp:") != std::string::npos);

    const auto j = nlohmann::json::parse(to_json(ds));
    CHECK(j["dataset"] == "3b");
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][1]["C_from_H"].is_null());
    CHECK(j["rows"][1]["error"] == "Instability");

    FigureDataset bad = ds;
    bad.rows[0].pop_back();
    CHECK_THROWS(validate_dataset(bad));
    bad = ds;
    bad.rows[0][2] = std::nan("");
    CHECK_THROWS(validate_dataset(bad));
}

TEST_CASE("exit codes") {
    CHECK(run_qbm("--gamma -1 state").status == 2);
    CHECK(run_qbm("state --no-such-flag").status == 2);
    CHECK(run_qbm("state --config /nonexistent/file.cfg").status == 2);
    CHECK(run_qbm("figure 9z").status == 2);
    const RunResult unstable = run_qbm("state --gamma 0.5 --temperature 1 --no-timestamp");
    CHECK(unstable.status == 3);
    CHECK(unstable.out.find("Instability") != std::string::npos);
    const RunResult ok = run_qbm("state --gamma 0 --temperature 1 --no-timestamp");
    CHECK(ok.status == 0);
    CHECK(ok.out.find("gamma,T,n,") != std::string::npos);
}

TEST_CASE("deterministic output with the timestamp suppressed") {
    const std::string args = "sweep --pipeline naive --naive-kc 40 --gamma 0.02 --temperatures 0.3,1,3 --no-timestamp";
    const RunResult a = run_qbm(args);
    const RunResult b = run_qbm(args);
    CHECK(a.status == 0);
    CHECK_FALSE(a.out.empty());
    CHECK(a.out == b.out);
    CHECK(a.out.find("timestamp") == std::string::npos);
    CHECK(run_qbm("sweep --pipeline naive --naive-kc 40 --gamma 0.02 --temperatures 1").out.find("# timestamp:") !=
          std::string::npos);
}

TEST_CASE("json output and sidecar files") {
    const auto dir = scratch_dir("cli");
    const std::string common = "sweep --pipeline naive --naive-kc 40 --gamma 0.02 --temperatures 0.5,2 --no-timestamp";
    const RunResult j = run_qbm(common + " --format json");
    REQUIRE(j.status == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["dataset"] == "sweep");
    CHECK(doc["rows"].size() == 2);

    const auto csv = dir / "sweep.csv";
    CHECK(run_qbm(common + " --out " + csv.string() + " --sidecar").status == 0);
    CHECK(std::filesystem::exists(csv));
    REQUIRE(std::filesystem::exists(csv.string() + ".json"));
    CHECK(nlohmann::json::parse(slurp(csv.string() + ".json"))["rows"].size() == 2);
    std::filesystem::remove_all(dir);
}
