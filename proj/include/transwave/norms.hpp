#pragma once
// Discrete Sobolev norms on the torus and on each side of the interface, the
// intersection norms built from them, and energy norms of time-derivative jets.

#include <string>
#include <vector>

#include "transwave/grid.hpp"
#include "transwave/jet.hpp"
#include "transwave/stencil.hpp"

namespace tw {

struct NormReport {
    double value = 0.0;
    // Per derivative order for sobolev_norm; per term (Ω, torus, Ω^c) for intersect_norm;
    // per jet entry for energy_norm.
    std::vector<double> contributions;
    int resolution = 0;
};

struct NormOptions {
    double p = 2.0;  // 1, 2, or infinity
    Topology topology = Topology::torus;
};

// W^{s,p} norm over the region: all mixed differences of order ≤ s, summed over components.
NormReport sobolev_norm(const GridFunction& f, int s, NormRegion region, NormOptions opt = {});
// Seminorm |f|_{k,p}: only derivatives of order exactly k.
double sobolev_seminorm(const GridFunction& f, int k, NormRegion region, NormOptions opt = {});
// L^p norm over the region.
double lp_norm(const GridFunction& f, NormRegion region, NormOptions opt = {});

// 𝓗^{k,s}: sqrt(H^s(Ω)² + H^k(torus)² + H^s(Ω^c)²).
NormReport intersect_norm(const GridFunction& f, int k, int s, Topology topology = Topology::torus);

enum class NormFamily { H_region, Hc_intersection, E_s, Ec_s, E_sr, E_base, Y_s };

struct NormSpec {
    NormFamily family = NormFamily::E_s;
    int k = 0;
    int s = 1;
    int r = 0;
    NormRegion region = NormRegion::Torus;
};

inline int m_weight(int l) { return l >= 2 ? 2 : l; }

// Energy norms of a jet (u_0, ..., u_s):
//   E_s:  Σ_ℓ ‖u_ℓ‖²_{𝓗^{m_{s-ℓ}, s-ℓ}};  Ec_s: 𝓗^{0,s-ℓ};  E_sr: E_s truncated at ℓ = r;
//   E_base: ‖u_0‖²_{H¹} + ‖u_1‖²_{L²};  Y_s: Σ_ℓ ‖u_ℓ‖²_{H^{s-ℓ}(region)}.
// H_region and Hc_intersection evaluate entry 0 only.
NormReport energy_norm(const Jet& jet, const NormSpec& spec);

}  // namespace tw
