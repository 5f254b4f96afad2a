#pragma once
// Trivial extension by zero and the interface-respecting mollifier J_λ:
// each side is reflected evenly across the interface planes, convolved with a
// compactly supported radial kernel, restricted back and blended by χ_Ω.

#include <array>
#include <vector>

#include "transwave/grid.hpp"

namespace tw {

struct MollifierKernel {
    double lambda = 0.0;
    std::vector<std::array<int, 3>> offsets;
    std::vector<double> weights;  // Σ weights · h^n = 1
};

// Radial bump (1 − (r/2λ)²)³ on offsets with r < 2λ; a point mass when no offset fits.
MollifierKernel mollifier_kernel(const TorusGrid& g, double lambda);

// Values on Ω copied, halved on interface points, zero on Ω^c.
GridFunction extend_zero(const GridFunction& f);

GridFunction mollify(const GridFunction& f, double lambda);

}  // namespace tw
