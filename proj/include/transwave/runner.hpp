#pragma once
// `run`, `report` and `list-models` commands.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace tw {

enum ExitCode : int {
    exit_ok = 0,
    exit_suite_failure = 1,
    exit_config_error = 2,
    exit_no_convergence = 3,
    exit_blowup = 4,
};

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::filesystem::path> out;
};

// Validates the config, runs its suites, writes CSVs plus manifest.csv into the output directory.
int run_command(const std::filesystem::path& config, const RunOverrides& overrides, std::ostream& log);
// One table per suite over the manifests of the given run directories, sorted by suite.
int report_command(const std::vector<std::filesystem::path>& dirs, std::ostream& out, std::ostream& err);
void list_models_command(std::ostream& out);

}  // namespace tw
