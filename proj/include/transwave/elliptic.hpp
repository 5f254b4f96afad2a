#pragma once
// (Δ − ψ)^{-1} by preconditioned conjugate gradients, its Green kernel and layer
// potentials, the interface regularity-gain harness, and the block system
// L_ε = L_0 − εL_1 for the time-differentiated equations with Born-series inversion.

#include <vector>

#include "transwave/csv.hpp"
#include "transwave/grid.hpp"

namespace tw {

struct HelmholtzReport {
    GridFunction w;
    int iterations = 0;
    double residual = 0.0;  // ‖(Δ−ψ)w − rhs‖ / ‖rhs‖
};

// Solves (Δ − ψ)w = rhs on the torus; ψ ≥ 0 with max ψ > 0. Throws SolverNotConverged.
HelmholtzReport helmholtz_solve_report(const GridFunction& rhs, const GridFunction& psi, double tol = 1e-10,
                                       int max_iter = 20000);
GridFunction helmholtz_solve(const GridFunction& rhs, const GridFunction& psi, double tol = 1e-10);

// (Δ − ψ)w with the periodic 3-point Laplacian.
GridFunction apply_helmholtz(const GridFunction& w, const GridFunction& psi);

// E(·, y): (Δ − ψ)E = δ_y / h^n.
GridFunction green_kernel(const GridFunction& psi, std::size_t y, double tol = 1e-12);

enum class LayerKind { single, double_layer };

// Interface points of the x^n = 0 plane in tangential row-major order.
std::vector<std::size_t> interface_plane(const TorusGrid& g);

// Σ_y E(x, y) v(y) h^{n−1} (single) or with E replaced by its forward normal difference in y (double).
GridFunction layer_potential(const GridFunction& psi, const std::vector<double>& density, LayerKind kind,
                             double tol = 1e-12);

// ‖R_Ω 𝓛(χ_Ω u)‖_{H^{k+2}(Ω)} / ‖u‖_{H^k(Ω)}, 𝓛 = (Δ − ψ)^{-1}; 0 when ‖u‖ = 0.
double regularity_gain_check(const GridFunction& u, int k, const GridFunction& psi);

// Frozen piecewise-polynomial corpus on Ω (five functions).
std::vector<GridFunction> regularity_corpus(const TorusGrid& g);

// Block system on slots 0..s−1. b[μ*(n+1)+ν][j] = ∂_t^j b^{μν}, j = 0..s.
struct BlockSystem {
    TorusGrid grid;
    int s = 1;
    double eps = 0.0;
    GridFunction psi;
    std::vector<std::vector<GridFunction>> b;
};

using BlockVector = std::vector<GridFunction>;

BlockSystem assemble_block_system(std::vector<std::vector<GridFunction>> b, GridFunction psi, int s, double eps);

// L_0 x: row k = (Δ − ψ)x_k − x_{k+2} (the −1 only while k + 2 ≤ s − 1).
BlockVector apply_L0(const BlockSystem& sys, const BlockVector& x);
// L_1 x: row k = q_k = −∂_t^k ∂_μ(b^{μν}∂_ν u) expanded by Leibniz, u_ℓ = x_ℓ for ℓ < s and 0 otherwise.
BlockVector apply_L1(const BlockSystem& sys, const BlockVector& x);
// L_ε x = L_0 x − ε L_1 x.
BlockVector apply_block(const BlockSystem& sys, const BlockVector& x);
// L_0^{-1} y by back-substitution from the top slot down.
BlockVector solve_L0(const BlockSystem& sys, const BlockVector& y, double tol = 1e-12);

// X^{s+1,s−1} norm: Σ_k ‖x_k‖²_{𝓗^{m_{s+1−k}, s+1−k}}.
double block_norm(const BlockSystem& sys, const BlockVector& x);

struct BornDiagnostics {
    std::vector<double> increments;  // ‖x_{m+1} − x_m‖, m = 1, 2, ...
    std::vector<double> rho;         // increment ratios
    int iterations = 0;
    bool converged = false;
    bool diverged = false;
    double slope = 0.0;         // fitted log-increment slope past iteration 3
    double fit_residual = 0.0;  // RMS residual of that fit
};

struct BornResult {
    BlockVector x;
    BornDiagnostics diag;
};

// x_{m+1} = L_0^{-1}(K + εL_1 x_m) from x_0 = 0. Stops when the increment falls below tol·‖x‖
// or after three consecutive ρ̂ ≥ 1 (diverged).
BornResult born_iterate(const BlockSystem& sys, const BlockVector& K, int max_terms = 200, double tol = 1e-9);
// Same, but throws DivergentBornSeries on divergence.
BornResult born_solve(const BlockSystem& sys, const BlockVector& K, int max_terms = 200, double tol = 1e-9);

// Rows (ε, iteration, increment, ρ̂).
void append_born_rows(CsvTable& table, double eps, const BornDiagnostics& diag);
CsvTable born_table();

}  // namespace tw
