#pragma once
// Finite-difference weights and region-restricted derivatives.
//
// A RegionView describes, per axis, the run of grid indices that belong to a
// region (the whole torus, the closure of Ω or of Ω^c, or the same sets on the
// non-periodic box). Derivatives along non-periodic runs switch from centered to
// one-sided stencils near the ends so that no stencil leaves the run. Interface
// values of the side being measured are replaced by a one-sided extrapolation,
// because a stored interface value is the average of the two one-sided limits.

#include <array>
#include <span>
#include <vector>

#include "transwave/grid.hpp"

namespace tw {

// Fornberg weights for the derivative of the given order at x0 from values at nodes.
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

enum class Topology { torus, box };
enum class NormRegion { Torus, Omega, OmegaC };

class RegionView {
public:
    RegionView(const TorusGrid& g, NormRegion region, Topology topology = Topology::torus);

    const TorusGrid& grid() const { return grid_; }
    // Quadrature weight per point (trapezoid halves at run ends); zero off the region.
    const std::vector<double>& weights() const { return weights_; }
    bool contains(std::size_t p) const { return weights_[p] > 0.0; }
    // Shortest run length over all axes; derivatives of order k need k+2 points.
    int min_run() const;

    // Copy of f with interface planes of this side replaced by cubic extrapolation.
    std::vector<double> side_values(std::span<const double> f) const;
    // k-th derivative along an axis on the region, zero elsewhere.
    std::vector<double> derivative(std::span<const double> f, int axis, int order) const;
    // D^alpha applied axis by axis.
    std::vector<double> mixed(std::span<const double> f, const std::array<int, 3>& alpha) const;

private:
    struct Run {
        std::vector<int> pos;
        bool periodic = false;
        bool extrap_lo = false;
        bool extrap_hi = false;
    };

    TorusGrid grid_;
    std::array<Run, 3> runs_;
    std::vector<double> weights_;
};

// All multi-indices alpha with |alpha| = k in n dimensions.
std::vector<std::array<int, 3>> multi_indices(int n, int k);

}  // namespace tw
