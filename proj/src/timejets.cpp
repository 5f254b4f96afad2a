#include "transwave/timejets.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "transwave/errors.hpp"
#include "transwave/norms.hpp"
#include "transwave/series.hpp"

namespace tw {
namespace {

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

GridFunction affine(const GridFunction& f, double shift, double scale) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v) x = (x - shift) * scale;
    return GridFunction(f.grid(), f.components(), std::move(v));
}

std::size_t center_index(const TorusGrid& g) {
    const int c = g.resolution() / 2;
    return g.ravel({c, c, c});
}

bool is_dyadic(double delta) {
    int e = 0;
    return delta > 0.0 && delta <= 1.0 && std::frexp(delta, &e) == 0.5;
}

}  // namespace

Jet::Jet(std::vector<GridFunction> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_)
        if (!(e.grid() == entries_.front().grid()) || e.components() != entries_.front().components())
            throw InvalidArgument("jet entries must share grid and component count");
}

Jet Jet::truncated(std::size_t length) const {
    if (length > entries_.size()) throw InvalidArgument("jet too short");
    return Jet(std::vector<GridFunction>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(length)));
}

void write_jet(std::ostream& os, const Jet& jet) {
    os.write("TWJT", 4);
    const auto count = static_cast<std::int32_t>(jet.size());
    os.write(reinterpret_cast<const char*>(&count), sizeof count);
    for (const auto& e : jet.entries()) write_binary(os, e);
}

Jet read_jet(std::istream& is) {
    char magic[4];
    std::int32_t count = 0;
    is.read(magic, 4);
    is.read(reinterpret_cast<char*>(&count), sizeof count);
    if (!is || std::memcmp(magic, "TWJT", 4) != 0 || count < 0) throw InvalidArgument("not a jet stream");
    std::vector<GridFunction> entries;
    for (int i = 0; i < count; ++i) entries.push_back(read_binary(is));
    return Jet(std::move(entries));
}

Jet compat_jets(const GridFunction& data0, const GridFunction& data1, const CoefficientModel& model, int order,
                const ExtraTerms& extra, double t0) {
    if (order < 0) throw InvalidArgument("negative jet order");
    const TorusGrid& g = data0.grid();
    if (!(data1.grid() == g)) throw InvalidArgument("data on different grids");
    std::vector<std::vector<double>> coeffs{to_vector(data0.component(0)), to_vector(data1.component(0))};
    for (int r = 0; r + 2 <= order; ++r) {
        coeffs.emplace_back(g.size(), 0.0);
        const auto rs = residual_series(model, g, t0, coeffs, extra);
        auto& next = coeffs.back();
        const double denom = static_cast<double>((r + 2) * (r + 1));
        for (std::size_t p = 0; p < g.size(); ++p) {
            if (!(std::fabs(rs.a00[p]) >= 0.5 * model.kappa()))
                throw EllipticityViolation(
                    fmt::format("|A^00| = {} below kappa/2 at point {}", std::fabs(rs.a00[p]), p));
            next[p] = -rs.R[p][r] / (denom * rs.a00[p]);
        }
    }
    std::vector<GridFunction> entries;
    for (int l = 0; l <= order; ++l) {
        auto v = coeffs[static_cast<std::size_t>(l)];
        const double f = factorial(l);
        for (double& x : v) x *= f;
        entries.emplace_back(g, 1, std::move(v));
    }
    return Jet(std::move(entries));
}

std::vector<std::vector<GridFunction>> metric_jets(const CoefficientModel& model, const Jet& jet, double t0) {
    const TorusGrid& g = jet.grid();
    const int n = g.dim();
    const int d = n + 1;
    const int q = jet.order();
    if (q < 0 || q >= Series::kCapacity) throw InvalidArgument("jet order out of range");
    const std::size_t P = g.size();
    std::vector<std::vector<double>> c(static_cast<std::size_t>(q + 1));
    for (int k = 0; k <= q; ++k) {
        c[k] = to_vector(jet[k].component(0));
        for (double& v : c[k]) v /= factorial(k);
    }
    std::vector<std::vector<std::vector<double>>> dc(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (const auto& ck : c) dc[i].push_back(d1(g, ck, i));
    std::vector<std::vector<std::vector<double>>> out(static_cast<std::size_t>(d * d),
                                                      std::vector<std::vector<double>>(static_cast<std::size_t>(q + 1),
                                                                                       std::vector<double>(P)));
    std::vector<Series> us(1), dus(static_cast<std::size_t>(d)), a(static_cast<std::size_t>(d * d));
    ModelState st;
    st.t = Series::variable(t0, q);
    st.n = n;
    st.m = 1;
    for (std::size_t p = 0; p < P; ++p) {
        st.x = g.point(p);
        st.index = p;
        us[0] = Series(0.0, q);
        for (int k = 0; k <= q; ++k) us[0][k] = c[k][p];
        dus[0] = us[0].derivative();
        dus[0].set_order(q);
        for (int i = 0; i < n; ++i) {
            dus[i + 1] = Series(0.0, q);
            for (int k = 0; k <= q; ++k) dus[i + 1][k] = dc[i][k][p];
        }
        st.u = us;
        st.du = dus;
        model.metric(st, a);
        for (int mn = 0; mn < d * d; ++mn)
            for (int k = 0; k <= q; ++k) out[mn][k][p] = a[mn].derivative_at_zero(k);
    }
    std::vector<std::vector<GridFunction>> res(static_cast<std::size_t>(d * d));
    for (int mn = 0; mn < d * d; ++mn)
        for (int k = 0; k <= q; ++k) res[mn].emplace_back(g, 1, std::move(out[mn][k]));
    return res;
}

GridFunction taylor_sum(const Jet& jet, double t) {
    std::vector<double> out(jet.grid().size(), 0.0);
    double w = 1.0;
    for (std::size_t l = 0; l < jet.size(); ++l) {
        if (l > 0) w *= t / static_cast<double>(l);
        const auto u = jet[l].component(0);
        for (std::size_t p = 0; p < out.size(); ++p) out[p] += w * u[p];
    }
    return GridFunction(jet.grid(), 1, std::move(out));
}

GridFunction taylor_sum_dt(const Jet& jet, double t) {
    if (jet.size() < 2) return GridFunction(jet.grid());
    std::vector<GridFunction> shifted(jet.entries().begin() + 1, jet.entries().end());
    return taylor_sum(Jet(std::move(shifted)), t);
}

double vanishing_box(const std::vector<GridFunction>& fields) {
    if (fields.empty()) return 0.0;
    const TorusGrid& g = fields.front().grid();
    const int n = g.dim();
    for (double w = 0.25; w >= g.spacing() * (1.0 - 1e-12); w *= 0.5) {
        bool zero = true;
        for (std::size_t p = 0; p < g.size() && zero; ++p) {
            const Point x = g.point(p);
            bool inside = true;
            for (int i = 0; i < n; ++i) inside = inside && std::fabs(x[i]) <= w * (1.0 + 1e-12);
            if (!inside) continue;
            for (const auto& f : fields)
                if (f.at(p) != 0.0) {
                    zero = false;
                    break;
                }
        }
        if (zero) return w;
    }
    return 0.0;
}

MuSources mu_sources(const Jet& projected, const Jet& raw, const CoefficientModel& projected_model,
                     const CoefficientModel& raw_model, const GridFunction& psi, int s) {
    if (s < 1) throw InvalidArgument("mu sources need s >= 1");
    if (static_cast<int>(projected.size()) < s + 2 || static_cast<int>(raw.size()) < s + 2)
        throw InvalidArgument("mu sources need jets with s + 2 entries");
    const TorusGrid& g = raw.grid();
    auto coeffs_of = [&](const Jet& j) {
        std::vector<std::vector<double>> c;
        for (int k = 0; k <= s + 1; ++k) {
            auto v = to_vector(j[static_cast<std::size_t>(k)].component(0));
            const double f = 1.0 / factorial(k);
            for (double& x : v) x *= f;
            c.push_back(std::move(v));
        }
        return c;
    };
    ExtraTerms proj_extra;
    proj_extra.psi = &psi;
    const auto rp = residual_series(projected_model, g, 0.0, coeffs_of(projected), proj_extra);
    const auto rr = residual_series(raw_model, g, 0.0, coeffs_of(raw), {});
    MuSources out;
    for (int r = 0; r < s; ++r) {
        std::vector<double> m(g.size());
        const double f = factorial(r);
        for (std::size_t p = 0; p < g.size(); ++p) m[p] = f * (rp.R[p][r] - rr.R[p][r]);
        out.mu.emplace_back(g, 1, std::move(m));
    }
    out.eta0 = vanishing_box(out.mu);
    return out;
}

ProjectedProblem project_to_torus(ModelPtr raw, const GridFunction& data0, const GridFunction& data1, int s,
                                  bool trivial_cutoffs) {
    const TorusGrid& g = data0.grid();
    ProjectedProblem pp{raw, GridFunction(g), {}, compat_jets(data0, data1, *raw, s + 1), Jet(), 0.0};
    if (trivial_cutoffs) {
        pp.jet = pp.raw_jet;
        for (int r = 0; r < s; ++r) pp.mu.emplace_back(g);
        pp.eta0 = vanishing_box(pp.mu);
        return pp;
    }
    pp.model = make_projected_model(raw, g);
    pp.psi = bump_psi(g, standard_bump(g.dim()));
    const GridFunction phi = cutoff_phi(g, 1.0);
    std::vector<GridFunction> entries;
    for (const auto& e : pp.raw_jet.entries()) entries.push_back(e * phi);
    pp.jet = Jet(std::move(entries));
    auto ms = mu_sources(pp.jet, pp.raw_jet, *pp.model, *raw, pp.psi, s);
    if (ms.eta0 <= 0.0) throw LocalizationFailure("no box around the origin on which every mu vanishes");
    pp.mu = std::move(ms.mu);
    pp.eta0 = ms.eta0;
    return pp;
}

double ScalingParams::sigma() const { return std::min(1.0, s - 0.5 * n); }
double ScalingParams::eps() const { return std::pow(delta, sigma()); }

void ScalingParams::validate() const {
    if (!is_dyadic(delta)) throw InvalidArgument(fmt::format("delta = {} is not dyadic in (0, 1]", delta));
    if (!(sigma() > 0.0)) throw InvalidArgument(fmt::format("s = {} must exceed n/2 = {}", s, 0.5 * n));
}

GridFunction dilate(const GridFunction& fine, double delta) {
    if (!is_dyadic(delta)) throw InvalidArgument(fmt::format("delta = {} is not dyadic in (0, 1]", delta));
    const TorusGrid& gf = fine.grid();
    const double nout = gf.resolution() * delta;
    const TorusGrid go(gf.dim(), static_cast<int>(nout));
    const int offset = (gf.resolution() - go.resolution()) / 2;
    std::vector<double> v(go.size() * static_cast<std::size_t>(fine.components()));
    for (int c = 0; c < fine.components(); ++c)
        for (std::size_t p = 0; p < go.size(); ++p) {
            auto idx = go.unravel(p);
            for (int a = 0; a < go.dim(); ++a) idx[a] += offset;
            v[static_cast<std::size_t>(c) * go.size() + p] = fine.at(gf.ravel(idx), c);
        }
    return GridFunction(go, fine.components(), std::move(v));
}

GridFunction subsample(const GridFunction& f, int k) {
    const TorusGrid& gf = f.grid();
    if (k < 1 || gf.resolution() % k != 0) throw InvalidArgument("subsampling factor must divide the resolution");
    const TorusGrid go(gf.dim(), gf.resolution() / k);
    std::vector<double> v(go.size() * static_cast<std::size_t>(f.components()));
    for (int c = 0; c < f.components(); ++c)
        for (std::size_t p = 0; p < go.size(); ++p) {
            auto idx = go.unravel(p);
            for (int a = 0; a < go.dim(); ++a) idx[a] *= k;
            v[static_cast<std::size_t>(c) * go.size() + p] = f.at(gf.ravel(idx), c);
        }
    return GridFunction(go, f.components(), std::move(v));
}

std::vector<GridFunction> ScaledProblem::metric() const {
    std::vector<GridFunction> out;
    for (std::size_t k = 0; k < b.size(); ++k) out.push_back(affine(b[k], -m[k] / eps, eps));
    return out;
}

ScaledProblem rescale(const FieldSet& fields, const ScalingParams& params) {
    params.validate();
    const TorusGrid& gf = fields.U.grid();
    const std::size_t c = center_index(gf);
    const double delta = params.delta;
    ScaledProblem sp{affine(dilate(fields.U, delta), fields.U.at(c), 1.0 / delta), {}, {}, GridFunction(gf), GridFunction(gf),
                     params.eps()};
    for (const auto& a : fields.A) {
        sp.m.push_back(a.at(c));
        sp.b.push_back(affine(dilate(a, delta), a.at(c), 1.0 / params.eps()));
    }
    sp.f = dilate(fields.F, delta).scaled(delta);
    sp.h = dilate(fields.H, delta).scaled(delta);
    return sp;
}

std::string scaling_role_name(ScalingRole role) {
    switch (role) {
        case ScalingRole::f_sigma: return "f_sigma";
        case ScalingRole::g_ell: return "g_ell";
        case ScalingRole::h_ell: return "h_ell";
    }
    return "?";
}

std::vector<ScalingRow> scaling_check(const GridFunction& fine, ScalingRole role, int s, int ell,
                                      const std::vector<double>& deltas) {
    if (deltas.empty()) return {};
    const TorusGrid& gf = fine.grid();
    const int n = gf.dim();
    if (ell < 0 || ell > s) throw InvalidArgument("need 0 <= ell <= s");
    const double dmin = *std::min_element(deltas.begin(), deltas.end());
    const int kmin = static_cast<int>(std::lround(1.0 / dmin));
    const GridFunction base = subsample(fine, kmin);

    const ScalingParams sp{1.0, s, n};
    const int order = role == ScalingRole::f_sigma ? s : s - ell;
    const int k = role == ScalingRole::f_sigma ? 2 : (role == ScalingRole::g_ell ? 0 : m_weight(s - ell));
    auto full = [&](const GridFunction& f) { return intersect_norm(f, std::min(k, order), order, Topology::box).value; };
    auto half = [&](const GridFunction& f) {
        return sobolev_norm(f, order, NormRegion::Omega, {2.0, Topology::box}).value;
    };
    const double f0 = fine.at(center_index(gf));
    const double rhs = full(base), rhs_half = half(base);

    std::vector<ScalingRow> rows;
    for (double delta : deltas) {
        const GridFunction window = dilate(fine, delta);
        const GridFunction w = subsample(window, static_cast<int>(std::lround(delta / dmin)));
        double weight = std::pow(delta, ell);
        GridFunction fd = w;
        if (role == ScalingRole::f_sigma) {
            fd = affine(w, f0, 1.0 / std::pow(delta, sp.sigma()));
            weight = 1.0;
        }
        ScalingRow row{role, delta, base.grid().resolution(), 0.0, 0.0};
        row.ratio = rhs > 0.0 ? weight * full(fd) / rhs : 0.0;
        row.half_box_ratio = rhs_half > 0.0 ? weight * half(fd) / rhs_half : 0.0;
        rows.push_back(row);
    }
    return rows;
}

CsvTable scaling_table(const std::vector<ScalingRow>& rows) {
    CsvTable t({"role", "delta", "N", "ratio", "half_box_ratio"});
    for (const auto& r : rows)
        t.add({scaling_role_name(r.role), r.delta, static_cast<long long>(r.N), r.ratio, r.half_box_ratio});
    return t;
}

}  // namespace tw
