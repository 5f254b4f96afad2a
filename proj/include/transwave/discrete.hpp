#pragma once
// Periodic difference operators, pointwise coefficient evaluation and the
// truncated-Taylor residual of the transmission wave operator
//
//   R = A^{00}U_tt + 2A^{0i}∂_iU_t + A^{ij}∂_i∂_jU + (∂_tA^{0ν} + D_iA^{iν})∂_νU
//       − ψU + ζA^{00}U_t − F − χ_Ω H − μ(t),   μ(t) = Σ_ℓ t^ℓ/ℓ! μ_ℓ.
//
// The stepper, the Runge–Kutta reference and the jet recursion all use these
// same spatial stencils, so the jets are exact Taylor data of the semi-discrete flow.

#include <span>
#include <vector>

#include "transwave/grid.hpp"
#include "transwave/model.hpp"
#include "transwave/series.hpp"

namespace tw {

// Centered first difference, 3-point second difference, and their compositions (periodic).
std::vector<double> d1(const TorusGrid& g, std::span<const double> f, int axis);
std::vector<double> d2(const TorusGrid& g, std::span<const double> f, int axis);
std::vector<double> d11(const TorusGrid& g, std::span<const double> f, int i, int j);
std::vector<double> laplacian(const TorusGrid& g, std::span<const double> f);

// Extra terms of the projected problem.
struct ExtraTerms {
    const GridFunction* psi = nullptr;             // ψ ≥ 0, or none
    double zeta = 0.0;                             // damping ζ
    const std::vector<GridFunction>* mu = nullptr;  // μ_0, μ_1, ...
};

// Coefficient values on the grid at one time; A and dtA laid out [(μ*(n+1)+ν)*points + p].
struct CoefficientFields {
    std::vector<double> A, dtA, F, H;
};

// Evaluates the model with U(t+τ) = u + τ u_t and ∂U expanded to first order in τ.
void evaluate_coefficients(const CoefficientModel& model, const TorusGrid& g, double t, std::span<const double> u,
                           std::span<const double> ut, std::span<const double> utt, CoefficientFields& out);

// μ(t) on the grid.
std::vector<double> mu_at(const std::vector<GridFunction>& mu, double t, std::size_t points);

// Split form used by explicit steppers: R = A^{00}U_tt + d·U_t − r, with
//   d = ∂_tA^{00} + D_iA^{i0} + ζA^{00},
//   r = −(2A^{0i}∂_iV + A^{ij}∂_i∂_jU + (∂_tA^{0j} + D_iA^{ij})∂_jU − ψU − F − χH − μ),
// where V is the caller's estimate of U_t used in the mixed term.
struct SplitOperator {
    std::vector<double> a, d, r;
};
void split_operator(const TorusGrid& g, const CoefficientFields& c, const ExtraTerms& extra, double t,
                    std::span<const double> u, std::span<const double> v, SplitOperator& out);

// Series residual for U(t0 + τ) = Σ_k coeffs[k] τ^k at every point; the series order is
// coeffs.size() − 1. Coefficient r of the result is exact when coeffs has r + 3 entries.
struct ResidualSeries {
    std::vector<Series> R;
    std::vector<double> a00;  // A^{00} at τ = 0
};
ResidualSeries residual_series(const CoefficientModel& model, const TorusGrid& g, double t0,
                               const std::vector<std::vector<double>>& coeffs, const ExtraTerms& extra);

// Ellipticity check over a coefficient batch (20 random ξ per batch, fixed seed).
void check_coefficients(const CoefficientModel& model, const TorusGrid& g, const std::vector<double>& A,
                        const std::string& where);

}  // namespace tw
