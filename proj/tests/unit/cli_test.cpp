#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "transwave/config.hpp"
#include "transwave/csv.hpp"
#include "transwave/errors.hpp"
#include "transwave/runner.hpp"

using namespace tw;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("transwave_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string error_of(const std::string& text) {
    try {
        parse_config(text, "t.cfg");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("config errors name the line") {
    CHECK(error_of("[run]\nsuites = waves\n[grid]\nN = 63\n").find("t.cfg:4:") == 0);
    CHECK(error_of("[run]\nsuites = waves\nbogus = 1\n").find("t.cfg:3:") == 0);
    CHECK(error_of("[run]\nsuites = waves\n[waves]\nT = abc\n").find("t.cfg:4:") == 0);
    CHECK(error_of("[run]\nsuites = nope\n").find("t.cfg:2:") == 0);
    CHECK(error_of("[run\nsuites = waves\n").find("t.cfg:1:") == 0);
    CHECK(error_of("[run]\nsuites = waves\n[model]\nid = nosuch\n").find("t.cfg:4:") == 0);
}

TEST_CASE("config defaults and parameters") {
    const auto c = parse_config("[run]\nsuites = born, waves\n[model]\nid = variable\n[params]\namp = 0.2\n");
    CHECK(c.suites == std::vector<std::string>{"born", "waves"});
    CHECK(c.params.at("amp") == 0.2);
    CHECK(c.N == 64);
}

TEST_CASE("flat_wave config runs and writes the energy drift table") {
    const fs::path out = scratch("flat");
    std::ostringstream log;
    const int rc = run_command(fs::path(TRANSWAVE_SOURCE_DIR) / "configs/flat_wave.cfg", {std::nullopt, 2, out}, log);
    CHECK(rc == 0);
    REQUIRE(fs::exists(out / "energy_drift.csv"));
    const auto m = read_csv(out / "manifest.csv");
    bool drift = false;
    for (const auto& r : m.rows)
        if (r[1] == "energy_drift") drift = r[3] == "pass" && std::stod(r[2]) <= 1e-8;
    CHECK(drift);
    std::ostringstream rep, err;
    CHECK(report_command({out}, rep, err) == 0);
    CHECK(rep.str().find("energy_drift") != std::string::npos);
}

TEST_CASE("born sweep reports a divergent row") {
    const fs::path out = scratch("born");
    std::ostringstream log;
    CHECK(run_command(fs::path(TRANSWAVE_SOURCE_DIR) / "configs/born_sweep.cfg", {std::nullopt, std::nullopt, out},
                      log) == 0);
    const auto sweep = read_csv(out / "born_sweep.csv");
    const int st = sweep.column("status");
    int divergent = 0;
    for (const auto& r : sweep.rows) divergent += r[static_cast<std::size_t>(st)] == "DivergentBornSeries";
    CHECK(divergent == 1);
}

TEST_CASE("command line exit codes") {
    const fs::path dir = scratch("cli");
    fs::create_directories(dir);
    const fs::path bad = dir / "bad.cfg";
    std::ofstream(bad) << "[run]\nsuites = waves\n[grid]\nN = seven\n";
    const std::string cli = TRANSWAVE_CLI;
    auto status = [](const std::string& cmd) {
        const int s = std::system((cmd + " > /dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status(cli + " run " + bad.string()) == 2);
    CHECK(status(cli + " run " + (dir / "missing.cfg").string()) == 2);
    CHECK(status(cli + " report " + (dir / "empty").string()) == 2);
    CHECK(status(cli + " list-models") == 0);
    CHECK(status(cli + " frobnicate") == 2);
}
