#include "transwave/discrete.hpp"

#include <random>

#include "transwave/errors.hpp"
#include "transwave/parallel.hpp"
#include "transwave/simd.hpp"

namespace tw {
namespace {

double chi_value(const TorusGrid& g, std::size_t p) {
    switch (region_of(g, p)) {
        case Region::Omega: return 1.0;
        case Region::OmegaC: return 0.0;
        case Region::Interface: return 0.5;
    }
    return 0.0;
}

bool any_nonzero(std::span<const double> x) { return par::max_abs(x) > 0.0; }

std::span<const double> block(const std::vector<double>& v, std::size_t k, std::size_t points) {
    return std::span<const double>(v).subspan(k * points, points);
}

}  // namespace

std::vector<double> d1(const TorusGrid& g, std::span<const double> f, int axis) {
    std::vector<double> out(g.size());
    simd::kernels().diff1(f.data(), out.data(), g.outer(axis), static_cast<std::size_t>(g.resolution()),
                          g.stride(axis), 0.5 / g.spacing(), false);
    return out;
}

std::vector<double> d2(const TorusGrid& g, std::span<const double> f, int axis) {
    std::vector<double> out(g.size());
    const double h = g.spacing();
    simd::kernels().diff2(f.data(), out.data(), g.outer(axis), static_cast<std::size_t>(g.resolution()),
                          g.stride(axis), 1.0 / (h * h), false);
    return out;
}

std::vector<double> d11(const TorusGrid& g, std::span<const double> f, int i, int j) {
    if (i == j) return d2(g, f, i);
    const auto fi = d1(g, f, i);
    return d1(g, fi, j);
}

std::vector<double> laplacian(const TorusGrid& g, std::span<const double> f) {
    std::vector<double> out(g.size(), 0.0);
    const double h = g.spacing();
    for (int axis = 0; axis < g.dim(); ++axis)
        simd::kernels().diff2(f.data(), out.data(), g.outer(axis), static_cast<std::size_t>(g.resolution()),
                              g.stride(axis), 1.0 / (h * h), true);
    return out;
}

void evaluate_coefficients(const CoefficientModel& model, const TorusGrid& g, double t, std::span<const double> u,
                           std::span<const double> ut, std::span<const double> utt, CoefficientFields& out) {
    const int n = g.dim();
    const int d = n + 1;
    const std::size_t P = g.size();
    out.A.assign(static_cast<std::size_t>(d * d) * P, 0.0);
    out.dtA.assign(out.A.size(), 0.0);
    out.F.assign(P, 0.0);
    out.H.assign(P, 0.0);

    std::vector<std::vector<double>> du(static_cast<std::size_t>(n)), dut(static_cast<std::size_t>(n));
    if (!model.linear()) {
        for (int i = 0; i < n; ++i) {
            du[i] = d1(g, u, i);
            dut[i] = d1(g, ut, i);
        }
    }
    par::for_blocks(P, [&](std::size_t b, std::size_t e) {
        std::vector<Series> us(1), dus(static_cast<std::size_t>(d)), A(static_cast<std::size_t>(d * d)), F(1), H(1);
        ModelState st;
        st.t = Series::variable(t, 1);
        st.n = n;
        st.m = 1;
        for (std::size_t p = b; p < e; ++p) {
            st.x = g.point(p);
            st.index = p;
            if (!model.linear()) {
                us[0] = Series(u[p], 1);
                us[0][1] = ut[p];
                dus[0] = Series(ut[p], 1);
                dus[0][1] = utt[p];
                for (int i = 0; i < n; ++i) {
                    dus[i + 1] = Series(du[i][p], 1);
                    dus[i + 1][1] = dut[i][p];
                }
            }
            st.u = us;
            st.du = dus;
            model.metric(st, A);
            model.sources(st, F, H);
            for (int k = 0; k < d * d; ++k) {
                out.A[k * P + p] = A[k][0];
                out.dtA[k * P + p] = A[k][1];
            }
            out.F[p] = F[0][0];
            out.H[p] = H[0][0];
        }
    });
}

std::vector<double> mu_at(const std::vector<GridFunction>& mu, double t, std::size_t points) {
    std::vector<double> out(points, 0.0);
    double w = 1.0;
    for (std::size_t l = 0; l < mu.size(); ++l) {
        if (l > 0) w *= t / static_cast<double>(l);
        const auto m = mu[l].component(0);
        for (std::size_t p = 0; p < points; ++p) out[p] += w * m[p];
    }
    return out;
}

void split_operator(const TorusGrid& g, const CoefficientFields& c, const ExtraTerms& extra, double t,
                    std::span<const double> u, std::span<const double> v, SplitOperator& out) {
    const int n = g.dim();
    const int d = n + 1;
    const std::size_t P = g.size();
    auto A = [&](int mu, int nu) { return block(c.A, static_cast<std::size_t>(mu * d + nu), P); };
    auto dtA = [&](int mu, int nu) { return block(c.dtA, static_cast<std::size_t>(mu * d + nu), P); };

    out.a.assign(A(0, 0).begin(), A(0, 0).end());
    out.d.assign(dtA(0, 0).begin(), dtA(0, 0).end());
    std::vector<double> rest(P, 0.0);

    for (int i = 0; i < n; ++i) {
        const auto a0i = A(0, i + 1);
        if (any_nonzero(a0i)) {
            const auto dv = d1(g, v, i);
            for (std::size_t p = 0; p < P; ++p) rest[p] += 2.0 * a0i[p] * dv[p];
        }
        const auto ai0 = A(i + 1, 0);
        if (any_nonzero(ai0)) {
            const auto da = d1(g, ai0, i);
            for (std::size_t p = 0; p < P; ++p) out.d[p] += da[p];
        }
    }
    if (extra.zeta != 0.0)
        for (std::size_t p = 0; p < P; ++p) out.d[p] += extra.zeta * out.a[p];

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto aij = A(i + 1, j + 1);
            if (!any_nonzero(aij)) continue;
            const auto dd = d11(g, u, i, j);
            for (std::size_t p = 0; p < P; ++p) rest[p] += aij[p] * dd[p];
        }
    for (int j = 0; j < n; ++j) {
        std::vector<double> q(dtA(0, j + 1).begin(), dtA(0, j + 1).end());
        for (int i = 0; i < n; ++i) {
            const auto aij = A(i + 1, j + 1);
            if (!any_nonzero(aij)) continue;
            const auto da = d1(g, aij, i);
            for (std::size_t p = 0; p < P; ++p) q[p] += da[p];
        }
        if (!any_nonzero(q)) continue;
        const auto du = d1(g, u, j);
        for (std::size_t p = 0; p < P; ++p) rest[p] += q[p] * du[p];
    }
    std::vector<double> mu;
    if (extra.mu && !extra.mu->empty()) mu = mu_at(*extra.mu, t, P);
    for (std::size_t p = 0; p < P; ++p) {
        double s = c.F[p] + chi_value(g, p) * c.H[p];
        if (extra.psi) s += extra.psi->at(p) * u[p];
        if (!mu.empty()) s += mu[p];
        rest[p] -= s;
    }
    out.r.resize(P);
    for (std::size_t p = 0; p < P; ++p) out.r[p] = -rest[p];
}

ResidualSeries residual_series(const CoefficientModel& model, const TorusGrid& g, double t0,
                               const std::vector<std::vector<double>>& coeffs, const ExtraTerms& extra) {
    if (model.components() != 1) throw InvalidArgument("only scalar models are supported");
    const int n = g.dim();
    const int d = n + 1;
    const std::size_t P = g.size();
    const int q = static_cast<int>(coeffs.size()) - 1;
    if (q < 0 || q >= Series::kCapacity) throw InvalidArgument("series order out of range");

    // Spatial differences of every Taylor coefficient.
    std::vector<std::vector<std::vector<double>>> dU(static_cast<std::size_t>(n));
    std::vector<std::vector<std::vector<double>>> ddU(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (const auto& c : coeffs) dU[i].push_back(d1(g, c, i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& c : coeffs) ddU[i * n + j].push_back(d11(g, c, i, j));

    auto series_of = [&](const std::vector<std::vector<double>>& cs, std::size_t p) {
        Series s(0.0, q);
        for (int k = 0; k <= q; ++k) s[k] = cs[k][p];
        return s;
    };

    std::vector<Series> A(static_cast<std::size_t>(d * d) * P), F(P), H(P);
    par::for_blocks(P, [&](std::size_t b, std::size_t e) {
        std::vector<Series> us(1), dus(static_cast<std::size_t>(d)), a(static_cast<std::size_t>(d * d)), f(1), h(1);
        ModelState st;
        st.t = Series::variable(t0, q);
        st.n = n;
        st.m = 1;
        for (std::size_t p = b; p < e; ++p) {
            st.x = g.point(p);
            st.index = p;
            us[0] = series_of(coeffs, p);
            dus[0] = us[0].derivative();
            dus[0].set_order(q);
            for (int i = 0; i < n; ++i) dus[i + 1] = series_of(dU[i], p);
            st.u = us;
            st.du = dus;
            model.metric(st, a);
            model.sources(st, f, h);
            for (int k = 0; k < d * d; ++k) A[static_cast<std::size_t>(k) * P + p] = a[k];
            F[p] = f[0];
            H[p] = h[0];
        }
    });

    // q^ν = ∂_tA^{0ν} + D_iA^{iν}, D_i a centered difference of each coefficient field.
    std::vector<Series> qv(static_cast<std::size_t>(d) * P);
    for (int nu = 0; nu < d; ++nu) {
        for (std::size_t p = 0; p < P; ++p) {
            Series s = A[static_cast<std::size_t>(nu) * P + p].derivative();
            s.set_order(q);
            qv[static_cast<std::size_t>(nu) * P + p] = s;
        }
        for (int i = 0; i < n; ++i) {
            const std::size_t base = static_cast<std::size_t>((i + 1) * d + nu) * P;
            std::vector<double> field(P);
            for (int k = 0; k <= q; ++k) {
                bool nonzero = false;
                for (std::size_t p = 0; p < P; ++p) {
                    field[p] = A[base + p][k];
                    nonzero = nonzero || field[p] != 0.0;
                }
                if (!nonzero) continue;
                const auto df = d1(g, field, i);
                for (std::size_t p = 0; p < P; ++p) qv[static_cast<std::size_t>(nu) * P + p][k] += df[p];
            }
        }
    }

    std::vector<double> mu_c;
    ResidualSeries out;
    out.R.resize(P);
    out.a00.resize(P);
    par::for_blocks(P, [&](std::size_t b, std::size_t e) {
        const Series tvar = Series::variable(t0, q);
        for (std::size_t p = b; p < e; ++p) {
            const Series U = series_of(coeffs, p);
            Series Ut = U.derivative();
            Ut.set_order(q);
            Series Utt = Ut.derivative();
            Utt.set_order(q);
            const Series& a00 = A[p];
            Series R = a00 * Utt + Series(extra.zeta) * a00 * Ut + qv[p] * Ut;
            for (int i = 0; i < n; ++i) {
                Series dUi = series_of(dU[i], p);
                Series dUti = dUi.derivative();
                dUti.set_order(q);
                R += Series(2.0) * A[static_cast<std::size_t>(i + 1) * P + p] * dUti;
                R += qv[static_cast<std::size_t>(i + 1) * P + p] * dUi;
                for (int j = 0; j < n; ++j)
                    R += A[static_cast<std::size_t>((i + 1) * d + (j + 1)) * P + p] * series_of(ddU[i * n + j], p);
            }
            if (extra.psi) R -= Series(extra.psi->at(p)) * U;
            R -= F[p];
            R -= Series(chi_value(g, p)) * H[p];
            if (extra.mu) {
                Series powt(1.0, q);
                for (std::size_t l = 0; l < extra.mu->size(); ++l) {
                    if (l > 0) powt = powt * tvar * Series(1.0 / static_cast<double>(l));
                    R -= Series((*extra.mu)[l].at(p)) * powt;
                }
            }
            R.set_order(q);
            out.R[p] = R;
            out.a00[p] = a00[0];
        }
    });
    return out;
}

void check_coefficients(const CoefficientModel& model, const TorusGrid& g, const std::vector<double>& A,
                        const std::string& where) {
    std::mt19937_64 rng(0x5eedULL);
    check_ellipticity(A, g.size(), g.dim(), model.gamma(), model.kappa(), rng, where);
}

}  // namespace tw
