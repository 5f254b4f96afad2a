#include <iostream>

#include <CLI11.hpp>

#include "transwave/errors.hpp"
#include "transwave/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"transwave: transmission-problem wave solver and diagnostics"};
    app.require_subcommand(1);

    std::filesystem::path config;
    tw::RunOverrides ov;
    std::uint64_t seed = 0;
    int threads = 0;
    std::filesystem::path out;
    auto* run = app.add_subcommand("run", "run the suites listed in a config file");
    run->add_option("config", config, "config file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override [run] seed");
    auto* threads_opt = run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    auto* out_opt = run->add_option("--out", out, "override [output] dir");

    std::vector<std::filesystem::path> dirs;
    auto* report = app.add_subcommand("report", "summarize one or more run directories");
    report->add_option("dirs", dirs, "run output directories")->required();

    auto* models = app.add_subcommand("list-models", "list coefficient models and their parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : tw::exit_config_error;
    }

    try {
        if (*run) {
            if (*seed_opt) ov.seed = seed;
            if (*threads_opt) ov.threads = threads;
            if (*out_opt) ov.out = out;
            return tw::run_command(config, ov, std::cout);
        }
        if (*report) return tw::report_command(dirs, std::cout, std::cerr);
        if (*models) {
            tw::list_models_command(std::cout);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tw::exit_suite_failure;
    }
    return 0;
}
