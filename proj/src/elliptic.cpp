#include "transwave/elliptic.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "transwave/discrete.hpp"
#include "transwave/errors.hpp"
#include "transwave/norms.hpp"
#include "transwave/parallel.hpp"
#include "transwave/series.hpp"
#include "transwave/smoothing.hpp"

namespace tw {
namespace {

void validate_psi(const GridFunction& psi) {
    double mx = 0.0;
    for (double v : psi.values()) {
        if (v < 0.0) throw InvalidArgument("psi must be non-negative");
        mx = std::max(mx, v);
    }
    if (!(mx > 0.0)) throw InvalidArgument("psi must be positive somewhere");
}

// out = ψw − Δw (symmetric positive definite).
void apply_spd(const TorusGrid& g, std::span<const double> psi, std::span<const double> w, std::vector<double>& out) {
    out = laplacian(g, w);
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = psi[p] * w[p] - out[p];
}

GridFunction zero_like(const TorusGrid& g) { return GridFunction(g); }

std::span<const double> vals(const GridFunction& f) { return f.component(0); }

}  // namespace

HelmholtzReport helmholtz_solve_report(const GridFunction& rhs, const GridFunction& psi, double tol, int max_iter) {
    validate_psi(psi);
    const TorusGrid& g = rhs.grid();
    const std::size_t P = g.size();
    const auto ps = vals(psi);
    // Solve (ψ − Δ)w = −rhs.
    std::vector<double> b(P);
    for (std::size_t p = 0; p < P; ++p) b[p] = -rhs.at(p);
    const double bnorm = std::sqrt(par::norm2_sq(b));
    HelmholtzReport rep{zero_like(g), 0, 0.0};
    if (bnorm == 0.0) return rep;

    const double h = g.spacing();
    std::vector<double> diag(P);
    for (std::size_t p = 0; p < P; ++p) diag[p] = ps[p] + 2.0 * g.dim() / (h * h);

    std::vector<double> w(P, 0.0), r = b, z(P), d(P), Ad(P);
    for (std::size_t p = 0; p < P; ++p) z[p] = r[p] / diag[p];
    d = z;
    double rz = par::dot(r, z);
    double true_res = 1.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        const double rnorm = std::sqrt(par::norm2_sq(r));
        if (rnorm <= 0.5 * tol * bnorm) {
            std::vector<double> Aw;
            apply_spd(g, ps, w, Aw);
            for (std::size_t p = 0; p < P; ++p) Aw[p] = b[p] - Aw[p];
            true_res = std::sqrt(par::norm2_sq(Aw)) / bnorm;
            if (true_res <= tol) break;
            r = Aw;  // restart from the true residual
            for (std::size_t p = 0; p < P; ++p) z[p] = r[p] / diag[p];
            d = z;
            rz = par::dot(r, z);
        }
        apply_spd(g, ps, d, Ad);
        const double alpha = rz / par::dot(d, Ad);
        par::axpby(1.0, w, alpha, d, w);
        par::axpby(1.0, r, -alpha, Ad, r);
        for (std::size_t p = 0; p < P; ++p) z[p] = r[p] / diag[p];
        const double rz_new = par::dot(r, z);
        par::axpby(1.0, z, rz_new / rz, d, d);
        rz = rz_new;
    }
    if (it >= max_iter) {
        std::vector<double> Aw;
        apply_spd(g, ps, w, Aw);
        for (std::size_t p = 0; p < P; ++p) Aw[p] = b[p] - Aw[p];
        throw SolverNotConverged(fmt::format("CG did not converge in {} iterations, relative residual {:.3e}", max_iter,
                                             std::sqrt(par::norm2_sq(Aw)) / bnorm));
    }
    rep.w = GridFunction(g, 1, std::move(w));
    rep.iterations = it;
    rep.residual = true_res;
    return rep;
}

GridFunction helmholtz_solve(const GridFunction& rhs, const GridFunction& psi, double tol) {
    return helmholtz_solve_report(rhs, psi, tol).w;
}

GridFunction apply_helmholtz(const GridFunction& w, const GridFunction& psi) {
    const TorusGrid& g = w.grid();
    auto out = laplacian(g, vals(w));
    for (std::size_t p = 0; p < out.size(); ++p) out[p] -= psi.at(p) * w.at(p);
    return GridFunction(g, 1, std::move(out));
}

GridFunction green_kernel(const GridFunction& psi, std::size_t y, double tol) {
    const TorusGrid& g = psi.grid();
    std::vector<double> rhs(g.size(), 0.0);
    rhs.at(y) = 1.0 / std::pow(g.spacing(), g.dim());
    return helmholtz_solve(GridFunction(g, 1, std::move(rhs)), psi, tol);
}

std::vector<std::size_t> interface_plane(const TorusGrid& g) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < g.size(); ++p)
        if (g.normal_index(p) == g.resolution() / 2) out.push_back(p);
    return out;
}

GridFunction layer_potential(const GridFunction& psi, const std::vector<double>& density, LayerKind kind, double tol) {
    const TorusGrid& g = psi.grid();
    const auto plane = interface_plane(g);
    if (density.size() != plane.size()) throw InvalidArgument("density must have one value per interface point");
    const double h = g.spacing();
    std::vector<double> rhs(g.size(), 0.0);
    for (std::size_t k = 0; k < plane.size(); ++k) {
        if (kind == LayerKind::single) {
            rhs[plane[k]] += density[k] / h;
        } else {
            rhs[plane[k] + 1] += density[k] / (h * h);
            rhs[plane[k]] -= density[k] / (h * h);
        }
    }
    return helmholtz_solve(GridFunction(g, 1, std::move(rhs)), psi, tol);
}

double regularity_gain_check(const GridFunction& u, int k, const GridFunction& psi) {
    if (k < 0 || k > 2) throw InvalidArgument("regularity gain is checked for k <= 2");
    const double den = sobolev_norm(u, k, NormRegion::Omega).value;
    if (den == 0.0) return 0.0;
    const GridFunction w = helmholtz_solve(extend_zero(u), psi, 1e-10);
    return sobolev_norm(w, k + 2, NormRegion::Omega).value / den;
}

std::vector<GridFunction> regularity_corpus(const TorusGrid& g) {
    const int a = g.normal_axis();
    std::vector<std::function<double(double)>> fs{
        [](double) { return 1.0; },
        [](double y) { return y; },
        [](double y) { return y * y - 0.5 * y; },
        [](double y) { return 1.0 + y - y * y * y; },
        [](double y) { return (y - 0.5) * (y - 0.5) * y + 0.25; },
    };
    std::vector<GridFunction> out;
    for (const auto& f : fs) out.push_back(GridFunction::sample(g, [&](const Point& x) { return f(x[a]); }));
    return out;
}

BlockSystem assemble_block_system(std::vector<std::vector<GridFunction>> b, GridFunction psi, int s, double eps) {
    const TorusGrid g = psi.grid();
    const int d = g.dim() + 1;
    if (s < 1) throw InvalidArgument("block system needs s >= 1");
    if (eps < 0.0) throw InvalidArgument("coupling scale must be non-negative");
    if (static_cast<int>(b.size()) != d * d) throw InvalidArgument("block system needs (n+1)^2 coefficient jets");
    for (const auto& jet : b)
        if (static_cast<int>(jet.size()) < s + 1) throw InvalidArgument("coefficient jets need s + 1 entries");
    validate_psi(psi);
    return BlockSystem{g, s, eps, std::move(psi), std::move(b)};
}

BlockVector apply_L0(const BlockSystem& sys, const BlockVector& x) {
    BlockVector out;
    for (int k = 0; k < sys.s; ++k) {
        GridFunction r = apply_helmholtz(x[k], sys.psi);
        if (k + 2 <= sys.s - 1) r = r - x[k + 2];
        out.push_back(std::move(r));
    }
    return out;
}

BlockVector apply_L1(const BlockSystem& sys, const BlockVector& x) {
    const TorusGrid& g = sys.grid;
    const int n = g.dim();
    const int d = n + 1;
    const std::size_t P = g.size();
    const int s = sys.s;
    auto bj = [&](int mu, int nu, int j) -> std::span<const double> {
        return sys.b[static_cast<std::size_t>(mu * d + nu)][static_cast<std::size_t>(j)].component(0);
    };
    auto u = [&](int l) -> const GridFunction* { return l < s ? &x[static_cast<std::size_t>(l)] : nullptr; };

    BlockVector out;
    for (int k = 0; k < s; ++k) {
        std::vector<double> q(P, 0.0);
        auto add = [&](double c, std::span<const double> coef, const std::vector<double>& field) {
            for (std::size_t p = 0; p < P; ++p) q[p] += c * coef[p] * field[p];
        };
        for (int l = 0; l <= k; ++l) {
            const double c = binomial(k, l);
            const int j = k - l;
            if (const auto* u2 = u(l + 2)) {
                std::vector<double> f(vals(*u2).begin(), vals(*u2).end());
                add(c, bj(0, 0, j), f);
            }
            if (const auto* u1 = u(l + 1)) {
                std::vector<double> f(vals(*u1).begin(), vals(*u1).end());
                add(c, bj(0, 0, j + 1), f);
                for (int i = 0; i < n; ++i) {
                    add(2.0 * c, bj(0, i + 1, j), d1(g, vals(*u1), i));
                    const auto db = d1(g, bj(i + 1, 0, j), i);
                    add(c, db, f);
                }
            }
            if (const auto* u0 = u(l)) {
                for (int i = 0; i < n; ++i)
                    for (int m = 0; m < n; ++m) add(c, bj(i + 1, m + 1, j), d11(g, vals(*u0), i, m));
                for (int m = 0; m < n; ++m) {
                    std::vector<double> coef(bj(0, m + 1, j + 1).begin(), bj(0, m + 1, j + 1).end());
                    for (int i = 0; i < n; ++i) {
                        const auto db = d1(g, bj(i + 1, m + 1, j), i);
                        for (std::size_t p = 0; p < P; ++p) coef[p] += db[p];
                    }
                    add(c, coef, d1(g, vals(*u0), m));
                }
            }
        }
        for (double& v : q) v = -v;
        out.emplace_back(g, 1, std::move(q));
    }
    return out;
}

BlockVector apply_block(const BlockSystem& sys, const BlockVector& x) {
    BlockVector l0 = apply_L0(sys, x);
    if (sys.eps == 0.0) return l0;
    const BlockVector l1 = apply_L1(sys, x);
    for (std::size_t k = 0; k < l0.size(); ++k) l0[k] = l0[k] - l1[k].scaled(sys.eps);
    return l0;
}

BlockVector solve_L0(const BlockSystem& sys, const BlockVector& y, double tol) {
    BlockVector x(static_cast<std::size_t>(sys.s), GridFunction(sys.grid));
    for (int k = sys.s - 1; k >= 0; --k) {
        GridFunction rhs = y[static_cast<std::size_t>(k)];
        if (k + 2 <= sys.s - 1) rhs = rhs + x[static_cast<std::size_t>(k + 2)];
        x[static_cast<std::size_t>(k)] = helmholtz_solve(rhs, sys.psi, tol);
    }
    return x;
}

double block_norm(const BlockSystem& sys, const BlockVector& x) {
    double sum = 0.0;
    for (int k = 0; k < sys.s; ++k) {
        const int order = sys.s + 1 - k;
        const double v = intersect_norm(x[static_cast<std::size_t>(k)], m_weight(order), order).value;
        sum += v * v;
    }
    return std::sqrt(sum);
}

BornResult born_iterate(const BlockSystem& sys, const BlockVector& K, int max_terms, double tol) {
    if (static_cast<int>(K.size()) != sys.s) throw InvalidArgument("right-hand side needs s slots");
    BornResult res{BlockVector(static_cast<std::size_t>(sys.s), GridFunction(sys.grid)), {}};
    auto& dg = res.diag;
    int above = 0;
    for (int m = 1; m <= max_terms; ++m) {
        BlockVector y = K;
        if (sys.eps != 0.0) {
            const BlockVector l1 = apply_L1(sys, res.x);
            for (std::size_t k = 0; k < y.size(); ++k) y[k] = y[k] + l1[k].scaled(sys.eps);
        }
        BlockVector xn = solve_L0(sys, y);
        BlockVector diff;
        for (std::size_t k = 0; k < xn.size(); ++k) diff.push_back(xn[k] - res.x[k]);
        const double inc = block_norm(sys, diff);
        res.x = std::move(xn);
        if (!std::isfinite(inc)) {
            dg.diverged = true;
            break;
        }
        if (!dg.increments.empty() && dg.increments.back() > 0.0) {
            const double rho = inc / dg.increments.back();
            dg.rho.push_back(rho);
            above = rho >= 1.0 ? above + 1 : 0;
        }
        dg.increments.push_back(inc);
        if (inc <= tol * block_norm(sys, res.x)) {
            dg.converged = true;
            dg.iterations = m - 1;
            break;
        }
        if (above >= 3) {
            dg.diverged = true;
            dg.iterations = m;
            break;
        }
        dg.iterations = m;
    }
    // Log-increment fit past iteration 3, over strictly positive increments.
    std::vector<double> xs, ys;
    for (std::size_t m = 3; m < dg.increments.size(); ++m)
        if (dg.increments[m] > 0.0) {
            xs.push_back(static_cast<double>(m));
            ys.push_back(std::log(dg.increments[m]));
        }
    if (xs.size() >= 3) {
        const double nx = static_cast<double>(xs.size());
        const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / nx;
        const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / nx;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        dg.slope = sxy / sxx;
        double ss = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double e = ys[i] - (my + dg.slope * (xs[i] - mx));
            ss += e * e;
        }
        dg.fit_residual = std::sqrt(ss / nx);
    }
    return res;
}

BornResult born_solve(const BlockSystem& sys, const BlockVector& K, int max_terms, double tol) {
    BornResult res = born_iterate(sys, K, max_terms, tol);
    if (res.diag.diverged)
        throw DivergentBornSeries(fmt::format("Born series diverges at eps = {} (last rho = {:.3f})", sys.eps,
                                              res.diag.rho.empty() ? 0.0 : res.diag.rho.back()));
    return res;
}

CsvTable born_table() { return CsvTable({"eps", "iteration", "increment", "rho"}); }

void append_born_rows(CsvTable& table, double eps, const BornDiagnostics& diag) {
    for (std::size_t m = 0; m < diag.increments.size(); ++m)
        table.add({eps, static_cast<long long>(m + 1), diag.increments[m], (m == 0 || m - 1 >= diag.rho.size()) ? 0.0 : diag.rho[m - 1]});
}

}  // namespace tw
