#pragma once
// Compatibility jets, the correction sources μ_ℓ of the projected problem,
// dyadic rescaling and the scaling-inequality harness.

#include <string>
#include <vector>

#include "transwave/csv.hpp"
#include "transwave/discrete.hpp"
#include "transwave/jet.hpp"
#include "transwave/model.hpp"
#include "transwave/stencil.hpp"

namespace tw {

// Jet (Ũ_0, ..., Ũ_order) of the semi-discrete equation at time t0 from (U, ∂_tU):
// each Ũ_{r+2} is read off the order-r coefficient of the series residual.
Jet compat_jets(const GridFunction& data0, const GridFunction& data1, const CoefficientModel& model, int order,
                const ExtraTerms& extra = {}, double t0 = 0.0);

// Time jets of the metric along the solution jet: out[μ*(n+1)+ν][j] = ∂_t^j A^{μν}(t0), j ≤ jet.order().
std::vector<std::vector<GridFunction>> metric_jets(const CoefficientModel& model, const Jet& jet, double t0 = 0.0);

// Σ_ℓ t^ℓ/ℓ! u_ℓ and its time derivative.
GridFunction taylor_sum(const Jet& jet, double t);
GridFunction taylor_sum_dt(const Jet& jet, double t);

struct MuSources {
    std::vector<GridFunction> mu;  // μ_0, ..., μ_{s-1}
    double eta0 = 0.0;             // largest dyadic half-width with every μ_ℓ exactly zero on Q_{η0}
};

// μ_r = r! (R^proj_r − R^raw_r), the residual series of the projected problem evaluated on the
// projected jet minus that of the raw problem on the raw jet. Both jets need s + 2 entries.
MuSources mu_sources(const Jet& projected, const Jet& raw, const CoefficientModel& projected_model,
                     const CoefficientModel& raw_model, const GridFunction& psi, int s);

// Largest η in {1/4, 1/8, ...} (η ≥ h) with every field exactly zero on [−η, η]^n; 0 if none.
double vanishing_box(const std::vector<GridFunction>& fields);

struct ProjectedProblem {
    ModelPtr model;                // m + φ_1(A − m), φ_1F, φ_1H
    GridFunction psi;              // ψ damping bump
    std::vector<GridFunction> mu;  // correction sources
    Jet raw_jet;                   // compatibility jet of the raw problem (s + 2 entries)
    Jet jet;                       // φ_1 Ũ_ℓ
    double eta0 = 0.0;
};

// Projects an interface problem to the torus with cutoffs (φ_1, ψ). With trivial cutoffs the
// raw model, ψ = 0 and μ = 0 are returned. Throws LocalizationFailure when no η0 exists.
ProjectedProblem project_to_torus(ModelPtr raw, const GridFunction& data0, const GridFunction& data1, int s,
                                  bool trivial_cutoffs = false);

struct ScalingParams {
    double delta = 1.0;
    int s = 2;
    int n = 1;

    double sigma() const;
    double eps() const;
    void validate() const;  // dyadic δ ∈ (0, 1], s > n/2
};

// Central window [−δ, δ]^n of a fine field resampled onto Q_1 (N_fine·δ points per axis).
GridFunction dilate(const GridFunction& fine, double delta);
// Every k-th point per axis.
GridFunction subsample(const GridFunction& f, int k);

struct FieldSet {
    GridFunction U;
    std::vector<GridFunction> A;  // (n+1)² metric fields
    GridFunction F, H;
};

struct ScaledProblem {
    GridFunction u;
    std::vector<double> m;        // A(0)
    std::vector<GridFunction> b;  // (A(δx) − m)/δ^σ
    GridFunction f, h;
    double eps = 1.0;

    // m + ε b
    std::vector<GridFunction> metric() const;
};

// u = (U(δx) − U(0))/δ, b = (A(δx) − m)/δ^σ, f = δF(δx), h = δH(δx).
ScaledProblem rescale(const FieldSet& fields, const ScalingParams& params);

enum class ScalingRole { f_sigma, g_ell, h_ell };
std::string scaling_role_name(ScalingRole role);

struct ScalingRow {
    ScalingRole role;
    double delta = 1.0;
    int N = 0;
    double ratio = 0.0;           // on Q_1 (intersection norm, box topology)
    double half_box_ratio = 0.0;  // on Q_1^+ (H^{s-ℓ} or H^s)
};

// Ratios ‖f_δ‖/‖f‖ (f role, 𝓗^{2,s}), δ^ℓ‖g_δ‖/‖g‖ (𝓗^{0,s−ℓ}) and δ^ℓ‖h_δ‖/‖h‖ (𝓗^{m_{s−ℓ},s−ℓ}).
// The fine field lives on N_fine points; each δ window is resampled to N_fine·δ_min points.
std::vector<ScalingRow> scaling_check(const GridFunction& fine, ScalingRole role, int s, int ell,
                                      const std::vector<double>& deltas);

CsvTable scaling_table(const std::vector<ScalingRow>& rows);

}  // namespace tw
