#include "transwave/waves.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "transwave/errors.hpp"
#include "transwave/norms.hpp"
#include "transwave/parallel.hpp"
#include "transwave/simd.hpp"
#include "transwave/timejets.hpp"

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

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

double l2(const TorusGrid& g, std::span<const double> f) {
    return std::sqrt(par::norm2_sq(f) * std::pow(g.spacing(), g.dim()));
}

ExtraTerms extras_of(const LinearProblem& pb) {
    ExtraTerms e;
    e.psi = pb.psi ? &*pb.psi : nullptr;
    e.zeta = pb.zeta;
    e.mu = pb.mu.empty() ? nullptr : &pb.mu;
    return e;
}

std::vector<double> bdf2(std::span<const double> u, std::span<const double> um, std::span<const double> umm,
                         double dt) {
    std::vector<double> v(u.size());
    for (std::size_t p = 0; p < u.size(); ++p) v[p] = (3.0 * u[p] - 4.0 * um[p] + umm[p]) / (2.0 * dt);
    return v;
}

std::vector<double> second_difference(std::span<const double> up, std::span<const double> u,
                                      std::span<const double> um, double dt) {
    std::vector<double> a(u.size());
    for (std::size_t p = 0; p < u.size(); ++p) a[p] = (up[p] - 2.0 * u[p] + um[p]) / (dt * dt);
    return a;
}

double sup_spatial(const CoefficientFields& c, int n, std::size_t P) {
    const int d = n + 1;
    double m = 0.0;
    for (int i = 1; i < d; ++i)
        for (int j = 1; j < d; ++j)
            m = std::max(m, par::max_abs(std::span<const double>(c.A).subspan(static_cast<std::size_t>(i * d + j) * P, P)));
    return m;
}

// Accelerations of the semi-discrete equation: U_tt = (r − d U_t)/A^{00}.
std::vector<double> acceleration(const LinearProblem& pb, const TorusGrid& g, double t, std::span<const double> u,
                                 std::span<const double> v) {
    CoefficientFields c;
    const std::vector<double> zero(u.size(), 0.0);
    evaluate_coefficients(*pb.model, g, t, u, v, zero, c);
    SplitOperator so;
    split_operator(g, c, extras_of(pb), t, u, v, so);
    std::vector<double> acc(u.size());
    for (std::size_t p = 0; p < u.size(); ++p) acc[p] = (so.r[p] - so.d[p] * v[p]) / so.a[p];
    return acc;
}

}  // namespace

GridFunction Trajectory::u(int k) const { return GridFunction(grid, 1, to_vec(at(k))); }

GridFunction Trajectory::ut(int k) const {
    const int K = steps();
    std::vector<double> v(grid.size());
    if (k < K) {
        const auto up = at(k + 1), um = at(k - 1);
        for (std::size_t p = 0; p < v.size(); ++p) v[p] = (up[p] - um[p]) / (2.0 * dt);
    } else {
        v = bdf2(at(k), at(k - 1), at(k - 2), dt);
    }
    return GridFunction(grid, 1, std::move(v));
}

GridFunction Trajectory::utt(int k) const {
    const int K = steps();
    if (k < K) return GridFunction(grid, 1, second_difference(at(k + 1), at(k), at(k - 1), dt));
    return GridFunction(grid, 1, second_difference(at(k), at(k - 1), at(k - 2), dt));
}

double stable_dt(const CoefficientModel& model, const TorusGrid& g, double cfl) {
    return cfl * g.spacing() * std::sqrt(model.kappa() / model.gamma());
}

double energy_E(const GridFunction& u, const GridFunction& ut) {
    const double a = sobolev_norm(u, 1, NormRegion::Torus).value;
    const double b = lp_norm(ut, NormRegion::Torus);
    return std::sqrt(a * a + b * b);
}

LinearSolution solve_linear(const LinearProblem& pb) {
    if (!pb.model) throw InvalidArgument("linear problem without a model");
    if (pb.data.size() < 2) throw InvalidArgument("linear problem needs data (u_0, u_1)");
    if (!(pb.T > 0.0)) throw InvalidArgument("horizon must be positive");
    const CoefficientModel& model = *pb.model;
    const TorusGrid& g = pb.data.grid();
    const int n = g.dim();
    const std::size_t P = g.size();
    const double dt_max = stable_dt(model, g, pb.cfl);
    if (pb.dt > dt_max * (1.0 + 1e-12))
        throw CflViolation(fmt::format("dt = {} exceeds the stable bound {} (0.4 h sqrt(kappa/gamma))", pb.dt, dt_max));
    const double dt_req = pb.dt > 0.0 ? pb.dt : dt_max;
    const int K = std::max(1, static_cast<int>(std::ceil(pb.T / dt_req - 1e-9)));
    const double dt = pb.T / K;
    if (pb.frozen && (pb.frozen->steps() < K || std::fabs(pb.frozen->dt - dt) > 1e-14 * dt))
        throw InvalidArgument("frozen trajectory does not match the time grid");
    const ExtraTerms extra = extras_of(pb);

    LinearSolution sol;
    sol.traj.grid = g;
    sol.traj.dt = dt;
    auto& L = sol.traj.levels;
    L.reserve(static_cast<std::size_t>(K + 2));
    if (pb.startup == Startup::jet) {
        L.push_back(to_vec(taylor_sum(pb.data, -dt).component(0)));
        L.push_back(to_vec(pb.data[0].component(0)));
        L.push_back(to_vec(taylor_sum(pb.data, dt).component(0)));
    } else {
        const auto u0 = pb.data[0].component(0), u1 = pb.data[1].component(0);
        std::vector<double> m(P), p1(P);
        for (std::size_t p = 0; p < P; ++p) {
            m[p] = u0[p] - dt * u1[p];
            p1[p] = u0[p] + dt * u1[p];
        }
        L.push_back(std::move(m));
        L.push_back(to_vec(u0));
        L.push_back(std::move(p1));
    }
    auto level = [&](int k) -> std::span<const double> { return L.at(static_cast<std::size_t>(k + 1)); };

    const auto& kern = simd::kernels();
    const double s2 = 1.0 / (dt * dt), s1 = 1.0 / (2.0 * dt);
    const double vol = std::pow(g.spacing(), n);
    const int s = pb.data.order();
    double max_d3 = 0.0;
    CoefficientFields c;
    SplitOperator so;

    for (int k = 0; k <= K; ++k) {
        const double t = k * dt;
        // Solution-side estimates of U_t, U_tt at level k (explicit, from known levels).
        std::vector<double> v, a;
        if (k == 0) {
            v = to_vec(pb.data[1].component(0));
            a = pb.data.size() > 2 ? to_vec(pb.data[2].component(0)) : std::vector<double>(P, 0.0);
        } else {
            v = bdf2(level(k), level(k - 1), level(k - 2), dt);
            a = second_difference(level(k), level(k - 1), level(k - 2), dt);
        }
        if (pb.frozen) {
            const Trajectory& W = *pb.frozen;
            const auto wt = W.ut(k), wtt = W.utt(k);
            evaluate_coefficients(model, g, t, W.at(k), wt.component(0), wtt.component(0), c);
        } else {
            evaluate_coefficients(model, g, t, level(k), v, a, c);
        }
        sol.sup_spatial_coefficient = std::max(sol.sup_spatial_coefficient, sup_spatial(c, n, P));
        if (pb.check_stride > 0 && k % pb.check_stride == 0) check_coefficients(model, g, c.A, fmt::format("t = {}", t));

        if (k >= 1 && k < K) {
            split_operator(g, c, extra, t, level(k), v, so);
            std::vector<double> next(P);
            kern.leapfrog(so.r.data(), so.a.data(), so.d.data(), level(k).data(), level(k - 1).data(), s2, s1,
                          next.data(), P);
            if (!std::isfinite(par::max_abs(next)))
                throw NonFiniteState(fmt::format("non-finite state at t = {}", (k + 1) * dt));
            L.push_back(std::move(next));
        }

        const GridFunction uk(g, 1, to_vec(level(k)));
        const GridFunction utk = sol.traj.ut(k);
        if (pb.trace_stride > 0 && (k % pb.trace_stride == 0 || k == K)) {
            auto& tr = sol.trace;
            tr.t.push_back(t);
            tr.E.push_back(energy_E(uk, utk));
            tr.d1.push_back(l2(g, uk.component(0)));
            tr.d2.push_back(1.0 + par::max_abs(c.dtA));
            std::vector<double> f(P);
            std::vector<double> mu;
            if (!pb.mu.empty()) mu = mu_at(pb.mu, t, P);
            for (std::size_t p = 0; p < P; ++p) {
                f[p] = c.F[p] + chi_value(g, p) * c.H[p] - pb.zeta * c.A[p] * utk.at(p);
                if (pb.psi) f[p] += pb.psi->at(p) * uk.at(p);
                if (!mu.empty()) f[p] += mu[p];
            }
            tr.d3.push_back(l2(g, f));
            max_d3 = std::max(max_d3, tr.d3.back());
            if (pb.jet_stride > 0 && k % pb.jet_stride == 0 && s >= 1) {
                const Jet J = compat_jets(uk, utk, model, s, extra, t);
                tr.Es.push_back(energy_norm(J, {NormFamily::E_s, 0, s, 0, NormRegion::Torus}).value);
                tr.Ecs.push_back(energy_norm(J.truncated(static_cast<std::size_t>(s)),
                                             {NormFamily::Ec_s, 0, s - 1, 0, NormRegion::Torus})
                                     .value);
            } else {
                tr.Es.push_back(std::numeric_limits<double>::quiet_NaN());
                tr.Ecs.push_back(std::numeric_limits<double>::quiet_NaN());
            }
            if (k < K) {
                // Leapfrog quadratic energy at k + 1/2.
                const auto u0 = level(k), u1 = level(k + 1);
                double e = 0.0;
                std::vector<double> Lu(P, 0.0);
                for (int i = 0; i < n; ++i) {
                    const auto dd = d2(g, u0, i);
                    const std::size_t off = static_cast<std::size_t>((i + 1) * (n + 1) + (i + 1)) * P;
                    for (std::size_t p = 0; p < P; ++p) Lu[p] += c.A[off + p] * dd[p];
                }
                for (std::size_t p = 0; p < P; ++p) {
                    const double du = (u1[p] - u0[p]) / dt;
                    double term = -c.A[p] * du * du - Lu[p] * u1[p];
                    if (pb.psi) term += pb.psi->at(p) * u0[p] * u1[p];
                    e += term;
                }
                tr.discrete.push_back(e * vol);
            }
            const std::size_t m = tr.E.size();
            const int back = 10 / std::max(1, pb.trace_stride);
            if (pb.abort_on_blowup && back >= 1 && m > static_cast<std::size_t>(back)) {
                const double prev = tr.E[m - 1 - static_cast<std::size_t>(back)];
                if (tr.E.back() > 2.0 * prev + 40.0 * dt * max_d3 + pb.blowup_floor)
                    throw EnergyBlowup(fmt::format("energy grew from {:.3e} to {:.3e} within 10 steps at t = {}",
                                                   prev, tr.E.back(), t));
            }
        }
        if (pb.monitor && !pb.monitor(k, uk.component(0), utk.component(0))) {
            sol.stopped = k < K;
            // Drop the level computed beyond the stopping point.
            while (static_cast<int>(L.size()) > k + 2 + (k < K ? 1 : 0)) L.pop_back();
            break;
        }
    }
    return sol;
}

double fit_energy_constant(const EnergyTrace& tr) {
    const std::size_t M = tr.E.size();
    std::vector<double> I(M, 0.0);
    for (std::size_t i = 1; i < M; ++i)
        I[i] = I[i - 1] + 0.5 * (tr.t[i] - tr.t[i - 1]) *
                              (tr.d2[i] * tr.E[i] + tr.d3[i] + tr.d2[i - 1] * tr.E[i - 1] + tr.d3[i - 1]);
    double best = 0.0;
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = i; j < M; ++j) {
            const double den = tr.E[i] + tr.d1[i] + (I[j] - I[i]);
            if (den > 0.0) best = std::max(best, tr.E[j] / den);
        }
    return best;
}

MarginReport energy_estimate_check(const EnergyTrace& tr, double c) {
    const std::size_t M = tr.E.size();
    std::vector<double> I(M, 0.0);
    for (std::size_t i = 1; i < M; ++i)
        I[i] = I[i - 1] + 0.5 * (tr.t[i] - tr.t[i - 1]) *
                              (tr.d2[i] * tr.E[i] + tr.d3[i] + tr.d2[i - 1] * tr.E[i - 1] + tr.d3[i - 1]);
    MarginReport r{c, std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = i; j < M; ++j) {
            const double margin = c * (tr.E[i] + tr.d1[i] + (I[j] - I[i])) - tr.E[j];
            if (margin < r.min_margin) {
                r.min_margin = margin;
                r.t1 = tr.t[i];
                r.t2 = tr.t[j];
            }
        }
    if (M == 0) r.min_margin = 0.0;
    return r;
}

double calibrated_energy_constant() {
    static const double c = [] {
        const TorusGrid g(1, 64);
        LinearProblem pb;
        pb.model = make_model("flat");
        const auto u0 = GridFunction::sample(g, [](const Point& x) { return std::sin(2 * M_PI * x[0]); });
        pb.data = compat_jets(u0, GridFunction(g), *pb.model, 2);
        pb.T = 2.0;
        return 4.0 * fit_energy_constant(solve_linear(pb).trace);
    }();
    return c;
}

SpeedReport speed_check(const LinearProblem& a, const LinearProblem& b, const Point& x0, double r) {
    const LinearSolution sa = solve_linear(a), sb = solve_linear(b);
    const TorusGrid& g = sa.traj.grid;
    const int n = g.dim();
    SpeedReport rep;
    rep.c_max = std::sqrt(a.model->gamma() * std::max(sa.sup_spatial_coefficient, sb.sup_spatial_coefficient) /
                          a.model->kappa());
    const int s = a.data.order();
    const int K = std::min(sa.traj.steps(), sb.traj.steps());
    const double h = g.spacing();
    for (int k = 0; k <= K; ++k) {
        const double t = sa.traj.time(k);
        const double r_num = r + h * (k + s) * std::sqrt(static_cast<double>(n));
        const double r_phys = r + rep.c_max * t;
        const auto ua = sa.traj.at(k), ub = sb.traj.at(k);
        double ln = 0.0, lp = 0.0;
        for (std::size_t p = 0; p < g.size(); ++p) {
            const double dist = torus_distance(g.point(p), x0, n);
            const double diff = std::fabs(ua[p] - ub[p]);
            if (dist > r_num) ln = std::max(ln, diff);
            if (dist > r_phys) lp = std::max(lp, diff);
        }
        rep.t.push_back(t);
        rep.leak_numerical.push_back(ln);
        rep.leak_physical.push_back(lp);
        rep.max_numerical = std::max(rep.max_numerical, ln);
        rep.max_physical = std::max(rep.max_physical, lp);
    }
    return rep;
}

std::pair<GridFunction, GridFunction> rk4_reference(const LinearProblem& pb, double t_end, int substeps) {
    const TorusGrid& g = pb.data.grid();
    const std::size_t P = g.size();
    std::vector<double> u = to_vec(pb.data[0].component(0)), v = to_vec(pb.data[1].component(0));
    const double dt = t_end / substeps;
    std::vector<double> ut(P), vt(P);
    for (int i = 0; i < substeps; ++i) {
        const double t = i * dt;
        const auto k1u = v;
        const auto k1v = acceleration(pb, g, t, u, v);
        for (std::size_t p = 0; p < P; ++p) {
            ut[p] = u[p] + 0.5 * dt * k1u[p];
            vt[p] = v[p] + 0.5 * dt * k1v[p];
        }
        const auto k2u = vt;
        const auto k2v = acceleration(pb, g, t + 0.5 * dt, ut, vt);
        for (std::size_t p = 0; p < P; ++p) {
            ut[p] = u[p] + 0.5 * dt * k2u[p];
            vt[p] = v[p] + 0.5 * dt * k2v[p];
        }
        const auto k3u = vt;
        const auto k3v = acceleration(pb, g, t + 0.5 * dt, ut, vt);
        for (std::size_t p = 0; p < P; ++p) {
            ut[p] = u[p] + dt * k3u[p];
            vt[p] = v[p] + dt * k3v[p];
        }
        const auto k4u = vt;
        const auto k4v = acceleration(pb, g, t + dt, ut, vt);
        for (std::size_t p = 0; p < P; ++p) {
            u[p] += dt / 6.0 * (k1u[p] + 2.0 * k2u[p] + 2.0 * k3u[p] + k4u[p]);
            v[p] += dt / 6.0 * (k1v[p] + 2.0 * k2v[p] + 2.0 * k3v[p] + k4v[p]);
        }
    }
    return {GridFunction(g, 1, std::move(u)), GridFunction(g, 1, std::move(v))};
}

StartupOrder startup_order(const LinearProblem& pb, const std::vector<double>& dts, int perturb_level,
                           double amplitude) {
    Jet jet = pb.data;
    const TorusGrid& g = jet.grid();
    if (perturb_level >= 0) {
        if (perturb_level < 2 || perturb_level > jet.order())
            throw InvalidArgument("jet mismatch must be injected at a level in [2, s]");
        std::vector<GridFunction> e = jet.entries();
        const int a = g.normal_axis();
        e[static_cast<std::size_t>(perturb_level)] =
            e[static_cast<std::size_t>(perturb_level)] +
            GridFunction::sample(g, [&](const Point& x) { return amplitude * std::cos(M_PI * x[a]); });
        jet = Jet(std::move(e));
    }
    StartupOrder so;
    for (double dt : dts) {
        const auto pred = taylor_sum(jet, dt);
        const auto ref = rk4_reference(pb, dt, 64).first;
        double err = 0.0;
        for (std::size_t p = 0; p < g.size(); ++p) err = std::max(err, std::fabs(pred.at(p) - ref.at(p)));
        so.dts.push_back(dt);
        so.errors.push_back(err);
    }
    so.min_order = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < so.errors.size(); ++i) {
        const double o = std::log(so.errors[i - 1] / so.errors[i]) / std::log(so.dts[i - 1] / so.dts[i]);
        so.orders.push_back(o);
        so.min_order = std::min(so.min_order, o);
    }
    return so;
}

double manufactured_error(ModelPtr model, int n, int N, double T, int s, Startup startup) {
    if (!model->has_exact()) throw InvalidArgument("model has no closed-form solution");
    const TorusGrid g(n, N);
    const auto u0 = GridFunction::sample(g, [&](const Point& x) { return model->exact(0.0, x, n).first; });
    const auto u1 = GridFunction::sample(g, [&](const Point& x) { return model->exact(0.0, x, n).second; });
    LinearProblem pb;
    pb.model = model;
    pb.data = compat_jets(u0, u1, *model, s);
    pb.T = T;
    pb.startup = startup;
    pb.trace_stride = 0;
    const LinearSolution sol = solve_linear(pb);
    const int K = sol.traj.steps();
    const auto ue = GridFunction::sample(g, [&](const Point& x) { return model->exact(T, x, n).first; });
    const auto ve = GridFunction::sample(g, [&](const Point& x) { return model->exact(T, x, n).second; });
    return energy_E(sol.traj.u(K) - ue, sol.traj.ut(K) - ve);
}

CsvTable trace_table(const EnergyTrace& tr) {
    CsvTable t({"t", "E", "E_s", "Ec_s1", "d1", "d2", "d3"});
    for (std::size_t i = 0; i < tr.t.size(); ++i)
        t.add({tr.t[i], tr.E[i], tr.Es[i], tr.Ecs[i], tr.d1[i], tr.d2[i], tr.d3[i]});
    return t;
}

}  // namespace tw
