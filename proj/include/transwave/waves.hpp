#pragma once
// Leapfrog integration of the transmission wave equation, the energy trace and
// weak energy-estimate monitor, the finite-speed checker, and a Runge–Kutta
// method-of-lines reference for startup accuracy.

#include <functional>
#include <optional>
#include <vector>

#include "transwave/csv.hpp"
#include "transwave/discrete.hpp"
#include "transwave/jet.hpp"
#include "transwave/model.hpp"

namespace tw {

// Time levels u(kΔt) for k = −1..K.
struct Trajectory {
    TorusGrid grid{1, 8};
    double dt = 0.0;
    std::vector<std::vector<double>> levels;

    int steps() const { return static_cast<int>(levels.size()) - 2; }
    double time(int k) const { return k * dt; }
    std::span<const double> at(int k) const { return levels.at(static_cast<std::size_t>(k + 1)); }
    GridFunction u(int k) const;
    // Centered difference; second-order backward at the last level.
    GridFunction ut(int k) const;
    GridFunction utt(int k) const;
};

enum class Startup { jet, naive };

struct LinearProblem {
    ModelPtr model;
    // Coefficients A(U), F(U, ∂U), H(U, ∂U) evaluated along this trajectory; along the solution when null.
    const Trajectory* frozen = nullptr;
    std::optional<GridFunction> psi;
    double zeta = 0.0;
    std::vector<GridFunction> mu;
    Jet data;  // Ũ_0..Ũ_s; at least (u_0, u_1)
    double T = 1.0;
    double dt = 0.0;  // 0 selects the largest stable step
    double cfl = 0.4;
    Startup startup = Startup::jet;
    int trace_stride = 1;  // 0 disables the energy trace
    int jet_stride = 0;    // > 0 adds E^s and 𝓔^{s−1} of the solution jet every jet_stride steps
    int check_stride = 10;
    bool abort_on_blowup = true;
    double blowup_floor = 1e-6;
    // Called after every step with (k, u_k, ∂_tu_k); returning false stops the run.
    std::function<bool(int, std::span<const double>, std::span<const double>)> monitor;
};

struct EnergyTrace {
    std::vector<double> t, E, Es, Ecs, d1, d2, d3;
    std::vector<double> discrete;  // leapfrog quadratic energy at half steps (constant coefficients)
};

struct LinearSolution {
    Trajectory traj;
    EnergyTrace trace;
    double sup_spatial_coefficient = 0.0;  // sup |A^{ij}|
    bool stopped = false;                  // the monitor ended the run early
};

double stable_dt(const CoefficientModel& model, const TorusGrid& g, double cfl = 0.4);
LinearSolution solve_linear(const LinearProblem& problem);

// E = (‖u‖²_{H¹} + ‖u_t‖²)^{1/2} on the torus.
double energy_E(const GridFunction& u, const GridFunction& ut);

struct MarginReport {
    double c = 0.0;
    double min_margin = 0.0;
    double t1 = 0.0, t2 = 0.0;
};
// max over t1 ≤ t2 of E(t2) / (E(t1) + d1(t1) + ∫(d2 E + d3)).
double fit_energy_constant(const EnergyTrace& trace);
// min over t1 ≤ t2 of c(E(t1) + d1 + ∫(d2 E + d3)) − E(t2).
MarginReport energy_estimate_check(const EnergyTrace& trace, double c);
// Frozen constant: 4 × the fit on the flat standing wave at N = 64.
double calibrated_energy_constant();

struct SpeedReport {
    std::vector<double> t, leak_numerical, leak_physical;
    double c_max = 0.0;
    double max_numerical = 0.0, max_physical = 0.0;
};
// Problems differing only in data inside B_r(x0): max |A − B| outside B_{r + h(k + s)} (stencil cone)
// and outside B_{r + c_max t} with c_max = (γ sup|A^{ij}| / κ)^{1/2}.
SpeedReport speed_check(const LinearProblem& a, const LinearProblem& b, const Point& x0, double r);

// Method-of-lines RK4 for the semi-discrete equation from t = 0 to t_end.
std::pair<GridFunction, GridFunction> rk4_reference(const LinearProblem& problem, double t_end, int substeps);

struct StartupOrder {
    std::vector<double> dts, errors, orders;
    double min_order = 0.0;
};
// Taylor predictor Σ_{ℓ≤s} Δt^ℓ/ℓ! Ũ_ℓ against the RK4 reference at t = Δt for a halving sequence.
// perturb_level ≥ 2 adds a smooth mismatch of the given amplitude to that jet entry.
StartupOrder startup_order(const LinearProblem& problem, const std::vector<double>& dts, int perturb_level = -1,
                           double amplitude = 0.0);

// E-norm error at T against a model with a closed-form solution.
double manufactured_error(ModelPtr model, int n, int N, double T, int s, Startup startup);

CsvTable trace_table(const EnergyTrace& trace);

}  // namespace tw
