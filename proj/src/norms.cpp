#include "transwave/norms.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "transwave/errors.hpp"

namespace tw {
namespace {

bool is_inf(double p) { return std::isinf(p); }

// Σ w |g|^p over the region (or max |g| for p = ∞).
double accumulate(const RegionView& view, const std::vector<double>& g, double p) {
    const auto& w = view.weights();
    if (is_inf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (w[i] > 0.0) m = std::max(m, std::fabs(g[i]));
        return m;
    }
    double s = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < g.size(); ++i) s += w[i] * g[i] * g[i];
    } else {
        for (std::size_t i = 0; i < g.size(); ++i)
            if (w[i] > 0.0) s += w[i] * std::pow(std::fabs(g[i]), p);
    }
    return s;
}

double combine(double a, double b, double p) { return is_inf(p) ? std::max(a, b) : a + b; }
double root(double a, double p) { return is_inf(p) ? a : std::pow(a, 1.0 / p); }

// Per-order accumulated sums (not yet rooted).
std::vector<double> order_sums(const GridFunction& f, int s, NormRegion region, const NormOptions& opt) {
    if (s < 0) throw InvalidArgument("negative Sobolev order");
    const TorusGrid& g = f.grid();
    const RegionView view(g, region, opt.topology);
    if (region != NormRegion::Torus || opt.topology == Topology::box) {
        if (view.min_run() < s + 2)
            throw StencilTooWide(fmt::format("order {} needs {} points per side, resolution {} gives {}", s, s + 2,
                                             g.resolution(), view.min_run()));
    }
    std::vector<double> sums(s + 1, 0.0);
    for (int c = 0; c < f.components(); ++c) {
        const auto side = view.side_values(f.component(c));
        for (int k = 0; k <= s; ++k)
            for (const auto& alpha : multi_indices(g.dim(), k))
                sums[k] = combine(sums[k], accumulate(view, view.mixed(side, alpha), opt.p), opt.p);
    }
    return sums;
}

}  // namespace

NormReport sobolev_norm(const GridFunction& f, int s, NormRegion region, NormOptions opt) {
    const auto sums = order_sums(f, s, region, opt);
    NormReport r;
    r.resolution = f.grid().resolution();
    double total = 0.0;
    for (double v : sums) {
        r.contributions.push_back(root(v, opt.p));
        total = combine(total, v, opt.p);
    }
    r.value = root(total, opt.p);
    return r;
}

double sobolev_seminorm(const GridFunction& f, int k, NormRegion region, NormOptions opt) {
    return root(order_sums(f, k, region, opt).back(), opt.p);
}

double lp_norm(const GridFunction& f, NormRegion region, NormOptions opt) {
    return sobolev_norm(f, 0, region, opt).value;
}

NormReport intersect_norm(const GridFunction& f, int k, int s, Topology topology) {
    if (k > s) throw InvalidArgument(fmt::format("intersection norm needs k <= s, got k={} s={}", k, s));
    NormOptions opt;
    opt.topology = topology;
    const double a = sobolev_norm(f, s, NormRegion::Omega, opt).value;
    const double b = sobolev_norm(f, k, NormRegion::Torus, opt).value;
    const double c = sobolev_norm(f, s, NormRegion::OmegaC, opt).value;
    NormReport r;
    r.resolution = f.grid().resolution();
    r.contributions = {a, b, c};
    r.value = std::sqrt(a * a + b * b + c * c);
    return r;
}

NormReport energy_norm(const Jet& jet, const NormSpec& spec) {
    NormReport r;
    if (jet.empty()) throw InvalidArgument("energy norm of an empty jet");
    r.resolution = jet.grid().resolution();
    auto need = [&](std::size_t len) {
        if (jet.size() < len)
            throw InvalidArgument(fmt::format("jet has {} entries, norm needs {}", jet.size(), len));
    };
    double total = 0.0;
    auto add = [&](double v) {
        r.contributions.push_back(v);
        total += v * v;
    };
    switch (spec.family) {
        case NormFamily::H_region:
            add(sobolev_norm(jet[0], spec.s, spec.region).value);
            break;
        case NormFamily::Hc_intersection:
            add(intersect_norm(jet[0], spec.k, spec.s).value);
            break;
        case NormFamily::E_base:
            need(2);
            add(sobolev_norm(jet[0], 1, NormRegion::Torus).value);
            add(sobolev_norm(jet[1], 0, NormRegion::Torus).value);
            break;
        case NormFamily::E_s:
        case NormFamily::E_sr:
        case NormFamily::Ec_s: {
            const int last = spec.family == NormFamily::E_sr ? spec.r : spec.s;
            if (last > spec.s) throw InvalidArgument("E^{s,r} needs r <= s");
            need(static_cast<std::size_t>(last) + 1);
            for (int l = 0; l <= last; ++l) {
                const int ord = spec.s - l;
                const int k = spec.family == NormFamily::Ec_s ? 0 : m_weight(ord);
                add(intersect_norm(jet[l], k, ord).value);
            }
            break;
        }
        case NormFamily::Y_s:
            need(static_cast<std::size_t>(spec.s) + 1);
            for (int l = 0; l <= spec.s; ++l) add(sobolev_norm(jet[l], spec.s - l, spec.region).value);
            break;
    }
    r.value = std::sqrt(total);
    return r;
}

}  // namespace tw
