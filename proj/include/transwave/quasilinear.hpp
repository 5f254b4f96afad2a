#pragma once
// Picard iteration Z = J_T(U) for the quasi-linear problem, automatic horizon
// selection by halving, the uniqueness probe and the continuation monitor.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "transwave/csv.hpp"
#include "transwave/waves.hpp"

namespace tw {

struct QuasilinearProblem {
    ModelPtr model;
    Jet data;            // Ũ_0..Ũ_s from compat_jets
    double T = 1.0;      // initial horizon; halved on contraction failure
    double dt = 0.0;     // 0: stable step of the coarse grid, fixed across halvings
    double cfl = 0.4;
    double tol = 1e-8;   // on the X¹ distance between iterates
    int max_iter = 40;
    double R_factor = 4.0;  // ball radius R = R_factor · E^{s+1}(0)
    int high_snapshots = 8;  // E^{s+1} snapshots per iterate
    bool auto_T = true;
    // Initial guess: jet-Taylor extension, plus amplitude·(t/T)^{s+1}·bump(seed) when seed ≠ 0.
    std::uint64_t seed = 0;
    double seed_amplitude = 0.01;
};

struct IterationState {
    int index = 0;
    double T = 0.0;
    double R = 0.0;
    double high_norm = 0.0;  // sup_t E^{s+1} of the iterate
    double distance = 0.0;   // X¹ distance to the previous iterate
    std::optional<double> ratio;
};

struct QuasilinearResult {
    Trajectory solution;
    std::vector<IterationState> history;  // all iterates, including abandoned horizons
    std::vector<double> ratios;           // r_n at the accepted horizon
    double T = 0.0;
    double R = 0.0;
    int iterations = 0;
    int halvings = 0;
};

// Time levels of the jet-Taylor extension (optionally seeded) on the problem's time grid.
Trajectory initial_guess(const QuasilinearProblem& problem, double T);
// Z = J_T(U): the linear solve with A, F, H evaluated along U.
Trajectory picard_map(const Trajectory& U, const QuasilinearProblem& problem, double T);
// sup over time levels of E(a − b).
double x1_distance(const Trajectory& a, const Trajectory& b);
// sup over snapshots of E^{s+1} of the (s+1)-jet along the trajectory.
double high_norm(const Trajectory& U, const CoefficientModel& model, int s, int snapshots);

// Throws NoConvergence when max_iter is exceeded or T falls below 10Δt.
QuasilinearResult solve_quasilinear(const QuasilinearProblem& problem);
// Iterates at a fixed horizon without halving and returns every state (contraction probe).
std::vector<IterationState> picard_history(const QuasilinearProblem& problem, double T, int iterations);

struct UniquenessReport {
    double T = 0.0;
    double tol = 0.0;
    std::vector<double> t, distance;  // E-distance between the two solutions per level
    double max_distance = 0.0;
};
// Two solves from the same data with seeds seed_a, seed_b; the second runs at the first's horizon.
UniquenessReport uniqueness_probe(const QuasilinearProblem& problem, std::uint64_t seed_a, std::uint64_t seed_b);

enum class Verdict { Continuable, BlowupSuspected, Inconclusive };
std::string verdict_name(Verdict v);

struct ContinuationOptions {
    double w1inf_cap = 50.0;
    double growth_cap = 5.0;  // fitted exponential rate of E^{s+1}
    int s = 3;
    int snapshots = 16;
    double sigma_floor = 0.5;
};

struct ContinuationReport {
    std::vector<double> t, w1inf, high;  // W^{1,∞} per level; E^{s+1} per snapshot (NaN elsewhere)
    double K = 0.0;                      // sup W^{1,∞}
    double CK = 0.0;                     // C(K) = max(K, 1/2)
    double growth_rate = 0.0;
    double sigma_min = 0.0;              // σ_min(M_δ) at the requested δ
    double delta0 = 0.0;                 // largest dyadic δ ≤ 1 with σ_min(M_δ) ≥ floor
    bool cap_exceeded = false;
    double t_stop = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

// ‖u‖_{W^{1,∞}}: max of |u|, |∂_i u| and |∂_t u|.
double w1inf_norm(const TorusGrid& g, std::span<const double> u, std::span<const double> ut);

// s×s comparison matrix: unit diagonal, −δC in columns 0 and 1 of every row, −1 at (k, k+2).
std::vector<double> comparison_matrix(int s, double delta, double CK);
double smallest_singular_value(const std::vector<double>& M, int s);

// Direct evolution along the solution (coefficients evaluated at the current state) up to T,
// stopped early when W^{1,∞} exceeds the cap.
ContinuationReport evolve_and_monitor(ModelPtr model, const Jet& data, double T, double delta,
                                      const ContinuationOptions& opt, Trajectory* out = nullptr);
// Monitor over an existing trajectory.
ContinuationReport continuation_monitor(const Trajectory& traj, const CoefficientModel& model, double delta,
                                        const ContinuationOptions& opt);

CsvTable iteration_table(const std::vector<IterationState>& history);
CsvTable continuation_table(const ContinuationReport& report);

}  // namespace tw
