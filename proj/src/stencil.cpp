#include "transwave/stencil.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "transwave/errors.hpp"

namespace tw {

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order) {
    const int n = static_cast<int>(nodes.size()) - 1;
    if (order > n) throw InvalidArgument("too few nodes for derivative order");
    // c[j][k]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(n + 1, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int j = 0; j <= n; ++j) w[j] = c[j][order];
    return w;
}

std::vector<std::array<int, 3>> multi_indices(int n, int k) {
    std::vector<std::array<int, 3>> out;
    if (n == 1) return {{k, 0, 0}};
    for (int a = k; a >= 0; --a) {
        if (n == 2) {
            out.push_back({a, k - a, 0});
            continue;
        }
        for (int b = k - a; b >= 0; --b) out.push_back({a, b, k - a - b});
    }
    return out;
}

RegionView::RegionView(const TorusGrid& g, NormRegion region, Topology topology)
    : grid_(g), weights_(g.size(), 0.0) {
    const int N = g.resolution();
    const int half = N / 2;
    const bool box = topology == Topology::box;
    for (int a = 0; a < g.dim(); ++a) {
        Run r;
        const bool normal = a == g.normal_axis();
        if (!normal || region == NormRegion::Torus) {
            for (int j = 0; j < N; ++j) r.pos.push_back(j);
            r.periodic = !box;
        } else if (region == NormRegion::Omega) {
            for (int j = half; j < N; ++j) r.pos.push_back(j);
            if (!box) r.pos.push_back(0);
            r.extrap_lo = true;
            r.extrap_hi = !box;
        } else {
            for (int j = 0; j <= half; ++j) r.pos.push_back(j);
            r.extrap_lo = !box;
            r.extrap_hi = true;
        }
        runs_[a] = std::move(r);
    }
    std::vector<std::vector<double>> axis_w(g.dim(), std::vector<double>(N, 0.0));
    for (int a = 0; a < g.dim(); ++a) {
        const Run& r = runs_[a];
        for (std::size_t q = 0; q < r.pos.size(); ++q) {
            const bool end = !r.periodic && (q == 0 || q + 1 == r.pos.size());
            axis_w[a][r.pos[q]] = end ? 0.5 : 1.0;
        }
    }
    const double hn = std::pow(g.spacing(), g.dim());
    for (std::size_t p = 0; p < g.size(); ++p) {
        const auto idx = g.unravel(p);
        double w = hn;
        for (int a = 0; a < g.dim(); ++a) w *= axis_w[a][idx[a]];
        weights_[p] = w;
    }
}

int RegionView::min_run() const {
    int m = grid_.resolution();
    for (int a = 0; a < grid_.dim(); ++a) m = std::min(m, static_cast<int>(runs_[a].pos.size()));
    return m;
}

std::vector<double> RegionView::side_values(std::span<const double> f) const {
    std::vector<double> out(f.begin(), f.end());
    const int a = grid_.normal_axis();
    const Run& r = runs_[a];
    if (!r.extrap_lo && !r.extrap_hi) return out;
    const int N = grid_.resolution();
    const std::size_t lines = grid_.size() / static_cast<std::size_t>(N);
    const int L = static_cast<int>(r.pos.size());
    for (std::size_t line = 0; line < lines; ++line) {
        const double* row = f.data() + line * N;
        double* orow = out.data() + line * N;
        auto at = [&](int q) { return row[r.pos[q]]; };
        if (r.extrap_lo) orow[r.pos[0]] = 4.0 * at(1) - 6.0 * at(2) + 4.0 * at(3) - at(4);
        if (r.extrap_hi) orow[r.pos[L - 1]] = 4.0 * at(L - 2) - 6.0 * at(L - 3) + 4.0 * at(L - 4) - at(L - 5);
    }
    return out;
}

std::vector<double> RegionView::derivative(std::span<const double> f, int axis, int order) const {
    std::vector<double> out(grid_.size(), 0.0);
    if (order == 0) {
        for (std::size_t p = 0; p < grid_.size(); ++p)
            if (contains(p)) out[p] = f[p];
        return out;
    }
    const Run& r = runs_[axis];
    const int L = static_cast<int>(r.pos.size());
    const double h = grid_.spacing();
    const double scale = std::pow(h, -order);
    // Stencil per run position: first node offset and weights.
    std::vector<int> start(L);
    std::vector<std::vector<double>> wts(L);
    if (r.periodic) {
        const int half = (order % 2 == 0) ? order / 2 : (order + 1) / 2;
        std::vector<double> nodes;
        for (int o = -half; o <= half; ++o) nodes.push_back(o);
        const auto w = fd_weights(0.0, nodes, order);
        for (int q = 0; q < L; ++q) {
            start[q] = q - half;
            wts[q] = w;
        }
    } else {
        if (L < order + 2)
            throw StencilTooWide(fmt::format("derivative order {} needs {} points, run has {}", order, order + 2, L));
        const int wc = (order % 2 == 0) ? order + 1 : order + 2;
        const int hc = (wc - 1) / 2;
        for (int q = 0; q < L; ++q) {
            int s, w;
            if (q - hc >= 0 && q + hc <= L - 1) {
                s = q - hc;
                w = wc;
            } else {
                w = order + 2;
                s = std::clamp(q - w / 2, 0, L - w);
            }
            std::vector<double> nodes(w);
            for (int i = 0; i < w; ++i) nodes[i] = s + i;
            start[q] = s;
            wts[q] = fd_weights(static_cast<double>(q), nodes, order);
        }
    }
    const std::size_t stride = grid_.stride(axis);
    const std::size_t outer = grid_.outer(axis);
    const int N = grid_.resolution();
    std::vector<double> line(L);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < stride; ++i) {
            const std::size_t base = o * N * stride + i;
            if (!contains(base + static_cast<std::size_t>(r.pos[0]) * stride)) continue;
            for (int q = 0; q < L; ++q) line[q] = f[base + static_cast<std::size_t>(r.pos[q]) * stride];
            for (int q = 0; q < L; ++q) {
                double acc = 0.0;
                const auto& w = wts[q];
                for (std::size_t k = 0; k < w.size(); ++k) {
                    int idx = start[q] + static_cast<int>(k);
                    if (r.periodic) idx = ((idx % L) + L) % L;
                    acc += w[k] * line[idx];
                }
                out[base + static_cast<std::size_t>(r.pos[q]) * stride] = acc * scale;
            }
        }
    return out;
}

std::vector<double> RegionView::mixed(std::span<const double> f, const std::array<int, 3>& alpha) const {
    std::vector<double> cur = derivative(f, 0, alpha[0]);
    for (int a = 1; a < grid_.dim(); ++a)
        if (alpha[a] > 0) cur = derivative(cur, a, alpha[a]);
    return cur;
}

}  // namespace tw
