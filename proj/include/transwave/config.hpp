#pragma once
// Run configuration: INI-style `key = value` sections, validated before any compute.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "transwave/model.hpp"

namespace tw {

struct WavesConfig {
    double T = 1.0;
    double dt = 0.0;  // 0: largest stable step
    int s = 2;
    std::string data = "standing";  // standing | bump | manufactured
    double amplitude = 1.0;
    std::string startup = "jet";  // jet | naive
    int snapshot_stride = 0;      // 0: no snapshots
    int jet_stride = 0;
};

struct BornConfig {
    int s = 3;
    std::vector<double> eps{0.25, 0.5, 1.0};
    int max_terms = 200;
    double tol = 1e-9;
};

struct QuasilinearConfig {
    int s = 3;
    double T = 0.5;
    double tol = 1e-8;
    int max_iter = 40;
    double R_factor = 4.0;
    double amplitude = 0.1;
    double continuation_T = 2.0;
    double w1inf_cap = 50.0;
    double delta = 0.01;
};

struct SmoothingConfig {
    std::vector<double> lambdas{0.5, 0.25, 0.125, 0.0625};
};

struct RunConfig {
    std::filesystem::path source;
    std::vector<std::string> suites;
    std::uint64_t seed = 1;
    int n = 1;
    int N = 64;
    std::string model = "flat";
    ModelParams params;
    WavesConfig waves;
    BornConfig born;
    QuasilinearConfig quasilinear;
    SmoothingConfig smoothing;
    std::filesystem::path out = "out";
};

std::vector<std::string> known_suites();

// Throws ConfigError naming the offending line (syntax, unknown keys, bad values) or constraint.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::filesystem::path& source = "<string>");

}  // namespace tw
