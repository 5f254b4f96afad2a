#include "transwave/smoothing.hpp"

#include <cmath>

#include "transwave/errors.hpp"
#include "transwave/parallel.hpp"
#include "transwave/stencil.hpp"

namespace tw {
namespace {

// Even reflection of one side of f across both interface planes; a periodic function on the torus.
std::vector<double> reflect_side(const TorusGrid& g, const std::vector<double>& side, bool omega) {
    const int N = g.resolution();
    std::vector<double> out(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) {
        const int j = g.normal_index(p);
        const bool on_side = omega ? (j >= N / 2 || j == 0) : (j <= N / 2);
        out[p] = on_side ? side[p] : side[p - static_cast<std::size_t>(j) + static_cast<std::size_t>((N - j) % N)];
    }
    return out;
}

std::vector<double> convolve(const TorusGrid& g, const MollifierKernel& k, const std::vector<double>& f) {
    std::vector<double> out(g.size(), 0.0);
    const double vol = std::pow(g.spacing(), g.dim());
    par::for_blocks(g.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t p = b; p < e; ++p) {
            const auto idx = g.unravel(p);
            double s = 0.0;
            for (std::size_t q = 0; q < k.offsets.size(); ++q) {
                const auto& o = k.offsets[q];
                s += k.weights[q] * f[g.ravel({idx[0] - o[0], idx[1] - o[1], idx[2] - o[2]})];
            }
            out[p] = s * vol;
        }
    });
    return out;
}

}  // namespace

MollifierKernel mollifier_kernel(const TorusGrid& g, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidArgument("mollifier radius must lie in (0, 1]");
    const int n = g.dim();
    const double h = g.spacing();
    const double R = 2.0 * lambda;
    const int reach = static_cast<int>(std::ceil(R / h));
    MollifierKernel k;
    k.lambda = lambda;
    double sum = 0.0;
    for (int a = -reach; a <= reach; ++a)
        for (int b = (n > 1 ? -reach : 0); b <= (n > 1 ? reach : 0); ++b)
            for (int c = (n > 2 ? -reach : 0); c <= (n > 2 ? reach : 0); ++c) {
                const double r = h * std::sqrt(static_cast<double>(a * a + b * b + c * c));
                if (r >= R) continue;
                const double q = 1.0 - (r / R) * (r / R);
                k.offsets.push_back({a, b, c});
                k.weights.push_back(q * q * q);
                sum += q * q * q;
            }
    const double vol = std::pow(h, n);
    for (double& w : k.weights) w /= sum * vol;
    return k;
}

GridFunction extend_zero(const GridFunction& f) {
    const TorusGrid& g = f.grid();
    std::vector<double> v(f.values().begin(), f.values().end());
    for (int c = 0; c < f.components(); ++c)
        for (std::size_t p = 0; p < g.size(); ++p) {
            double& x = v[static_cast<std::size_t>(c) * g.size() + p];
            switch (region_of(g, p)) {
                case Region::Omega: break;
                case Region::Interface: x *= 0.5; break;
                case Region::OmegaC: x = 0.0; break;
            }
        }
    return GridFunction(g, f.components(), std::move(v));
}

GridFunction mollify(const GridFunction& f, double lambda) {
    const TorusGrid& g = f.grid();
    const MollifierKernel k = mollifier_kernel(g, lambda);
    const RegionView omega(g, NormRegion::Omega), omegac(g, NormRegion::OmegaC);
    std::vector<double> out(f.values().size());
    for (int c = 0; c < f.components(); ++c) {
        const auto comp = f.component(c);
        const auto mp = convolve(g, k, reflect_side(g, omega.side_values(comp), true));
        const auto mm = convolve(g, k, reflect_side(g, omegac.side_values(comp), false));
        for (std::size_t p = 0; p < g.size(); ++p) {
            double chi = 0.5;
            if (region_of(g, p) == Region::Omega) chi = 1.0;
            if (region_of(g, p) == Region::OmegaC) chi = 0.0;
            out[static_cast<std::size_t>(c) * g.size() + p] = chi * mp[p] + (1.0 - chi) * mm[p];
        }
    }
    return GridFunction(g, f.components(), std::move(out));
}

}  // namespace tw
