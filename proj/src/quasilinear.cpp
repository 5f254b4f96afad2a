#include "transwave/quasilinear.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/SVD>
#include <fmt/format.h>

#include "transwave/errors.hpp"
#include "transwave/norms.hpp"
#include "transwave/timejets.hpp"

namespace tw {
namespace {

double base_dt(const QuasilinearProblem& pb) {
    const double stable = stable_dt(*pb.model, pb.data.grid(), pb.cfl);
    return pb.dt > 0.0 ? std::min(pb.dt, stable) : stable;
}

int step_count(double T, double dt) { return std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9))); }

// Smooth periodic bump centred at a seeded random point.
GridFunction seeded_bump(const TorusGrid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Point c{};
    for (int i = 0; i < g.dim(); ++i) c[static_cast<std::size_t>(i)] = unif(rng);
    return GridFunction::sample(g, [&](const Point& x) {
        double v = 1.0;
        for (int i = 0; i < g.dim(); ++i) v *= 0.5 * (1.0 + std::cos(M_PI * (x[i] - c[i])));
        return v * v;
    });
}

double initial_high_norm(const QuasilinearProblem& pb) {
    const int s = pb.data.order();
    const Jet J = compat_jets(pb.data[0], pb.data[1], *pb.model, s + 1);
    return energy_norm(J, {NormFamily::E_s, 0, s + 1, 0, NormRegion::Torus}).value;
}

}  // namespace

Trajectory initial_guess(const QuasilinearProblem& pb, double T) {
    const double dt0 = base_dt(pb);
    const int K = step_count(T, dt0);
    Trajectory U;
    U.grid = pb.data.grid();
    U.dt = T / K;
    const int s = pb.data.order();
    std::optional<GridFunction> bump;
    if (pb.seed != 0) bump = seeded_bump(U.grid, pb.seed);
    for (int k = -1; k <= K; ++k) {
        const double t = k * U.dt;
        GridFunction v = taylor_sum(pb.data, t);
        // t^{s+1} keeps the initial jet (the ball condition) unchanged.
        if (bump) v = v + bump->scaled(pb.seed_amplitude * std::pow(t / T, s + 1));
        U.levels.emplace_back(v.values().begin(), v.values().end());
    }
    return U;
}

Trajectory picard_map(const Trajectory& U, const QuasilinearProblem& pb, double T) {
    LinearProblem lp;
    lp.model = pb.model;
    lp.frozen = &U;
    lp.data = pb.data;
    lp.T = T;
    lp.dt = U.dt;
    lp.cfl = pb.cfl;
    lp.trace_stride = 0;
    lp.abort_on_blowup = false;
    return solve_linear(lp).traj;
}

double x1_distance(const Trajectory& a, const Trajectory& b) {
    const int K = std::min(a.steps(), b.steps());
    double d = 0.0;
    for (int k = 0; k <= K; ++k) d = std::max(d, energy_E(a.u(k) - b.u(k), a.ut(k) - b.ut(k)));
    return d;
}

double high_norm(const Trajectory& U, const CoefficientModel& model, int s, int snapshots) {
    const int K = U.steps();
    double best = 0.0;
    int last = -1;
    for (int i = 0; i <= snapshots; ++i) {
        const int k = static_cast<int>(std::lround(static_cast<double>(i) * K / snapshots));
        if (k == last) continue;
        last = k;
        const Jet J = compat_jets(U.u(k), U.ut(k), model, s + 1, {}, U.time(k));
        best = std::max(best, energy_norm(J, {NormFamily::E_s, 0, s + 1, 0, NormRegion::Torus}).value);
    }
    return best;
}

std::vector<IterationState> picard_history(const QuasilinearProblem& pb, double T, int iterations) {
    const int s = pb.data.order();
    const double R = pb.R_factor * initial_high_norm(pb);
    std::vector<IterationState> out;
    Trajectory U = initial_guess(pb, T);
    double prev = 0.0;
    for (int n = 1; n <= iterations; ++n) {
        Trajectory Z = picard_map(U, pb, T);
        IterationState st;
        st.index = n;
        st.T = T;
        st.R = R;
        st.distance = x1_distance(Z, U);
        st.high_norm = high_norm(Z, *pb.model, s, pb.high_snapshots);
        if (n >= 2 && prev > 0.0 && st.distance > 0.0) st.ratio = st.distance / prev;
        out.push_back(st);
        if (st.distance == 0.0) break;
        prev = st.distance;
        U = std::move(Z);
    }
    return out;
}

QuasilinearResult solve_quasilinear(const QuasilinearProblem& pb) {
    if (!pb.model) throw InvalidArgument("quasilinear problem without a model");
    if (pb.data.size() < 2) throw InvalidArgument("quasilinear problem needs a data jet");
    if (!(pb.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    const int s = pb.data.order();
    const double dt0 = base_dt(pb);
    QuasilinearResult res;
    res.R = pb.R_factor * initial_high_norm(pb);
    double T = pb.T;
    std::string last_failure = "none";
    while (true) {
        if (T < 10.0 * dt0)
            throw NoConvergence(fmt::format("horizon fell below 10 dt ({:.3e}) after {} halvings; last failure: {}",
                                            10.0 * dt0, res.halvings, last_failure));
        Trajectory U = initial_guess(pb, T);
        res.ratios.clear();
        double prev = 0.0;
        bool failed = false;
        for (int n = 1; n <= pb.max_iter && !failed; ++n) {
            Trajectory Z;
            try {
                Z = picard_map(U, pb, T);
            } catch (const EllipticityViolation& e) {
                last_failure = e.what();
                failed = true;
                break;
            } catch (const NonFiniteState& e) {
                last_failure = e.what();
                failed = true;
                break;
            }
            IterationState st;
            st.index = n;
            st.T = T;
            st.R = res.R;
            st.distance = x1_distance(Z, U);
            st.high_norm = high_norm(Z, *pb.model, s, pb.high_snapshots);
            if (st.distance == 0.0) {
                // Exact fixed point (A, F, H independent of U): nothing left to contract.
                res.history.push_back(st);
                res.solution = std::move(U);
                res.iterations = n - 1;
                res.T = T;
                return res;
            }
            if (n >= 2) {
                st.ratio = st.distance / prev;
                res.ratios.push_back(*st.ratio);
            }
            res.history.push_back(st);
            if (st.high_norm > res.R) {
                last_failure = fmt::format("iterate {} left the ball: E^(s+1) = {:.3e} > R = {:.3e}", n,
                                           st.high_norm, res.R);
                failed = true;
            } else if (st.ratio && *st.ratio > 0.5) {
                last_failure = fmt::format("contraction ratio r_{} = {:.3f} > 1/2 at T = {}", n, *st.ratio, T);
                failed = true;
            } else if (st.distance < pb.tol) {
                res.solution = std::move(Z);
                res.iterations = n;
                res.T = T;
                return res;
            }
            prev = st.distance;
            U = std::move(Z);
            if (n == pb.max_iter && !failed)
                throw NoConvergence(fmt::format("{} iterations at T = {} without reaching tol {:.1e}; last distance {:.3e}",
                                                pb.max_iter, T, pb.tol, prev));
        }
        if (!pb.auto_T) throw NoConvergence(fmt::format("no contraction at fixed T = {}: {}", T, last_failure));
        T *= 0.5;
        ++res.halvings;
    }
}

UniquenessReport uniqueness_probe(const QuasilinearProblem& pb, std::uint64_t seed_a, std::uint64_t seed_b) {
    QuasilinearProblem a = pb;
    a.seed = seed_a;
    const QuasilinearResult ra = solve_quasilinear(a);
    QuasilinearProblem b = pb;
    b.seed = seed_b;
    b.T = ra.T;
    b.auto_T = false;
    const QuasilinearResult rb = solve_quasilinear(b);
    UniquenessReport rep;
    rep.T = ra.T;
    rep.tol = pb.tol;
    const Trajectory& A = ra.solution;
    const Trajectory& B = rb.solution;
    for (int k = 0; k <= std::min(A.steps(), B.steps()); ++k) {
        const double d = energy_E(A.u(k) - B.u(k), A.ut(k) - B.ut(k));
        rep.t.push_back(A.time(k));
        rep.distance.push_back(d);
        rep.max_distance = std::max(rep.max_distance, d);
    }
    return rep;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Continuable: return "Continuable";
        case Verdict::BlowupSuspected: return "BlowupSuspected";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

double w1inf_norm(const TorusGrid& g, std::span<const double> u, std::span<const double> ut) {
    double m = 0.0;
    for (std::size_t p = 0; p < u.size(); ++p) m = std::max({m, std::fabs(u[p]), std::fabs(ut[p])});
    for (int i = 0; i < g.dim(); ++i)
        for (double v : d1(g, u, i)) m = std::max(m, std::fabs(v));
    return m;
}

std::vector<double> comparison_matrix(int s, double delta, double CK) {
    if (s < 1) throw InvalidArgument("comparison matrix needs s >= 1");
    std::vector<double> M(static_cast<std::size_t>(s * s), 0.0);
    auto at = [&](int i, int j) -> double& { return M[static_cast<std::size_t>(i * s + j)]; };
    for (int i = 0; i < s; ++i) {
        at(i, i) = 1.0;
        at(i, 0) -= delta * CK;
        if (s > 1) at(i, 1) -= delta * CK;
        if (i + 2 < s) at(i, i + 2) = -1.0;
    }
    return M;
}

double smallest_singular_value(const std::vector<double>& M, int s) {
    Eigen::MatrixXd A(s, s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) A(i, j) = M[static_cast<std::size_t>(i * s + j)];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    return svd.singularValues()(s - 1);
}

ContinuationReport continuation_monitor(const Trajectory& traj, const CoefficientModel& model, double delta,
                                        const ContinuationOptions& opt) {
    ContinuationReport rep;
    const int K = traj.steps();
    const int stride = std::max(1, K / std::max(1, opt.snapshots));
    std::vector<double> ts, logs;
    bool finite = true;
    for (int k = 0; k <= K; ++k) {
        const GridFunction u = traj.u(k), ut = traj.ut(k);
        const double w = w1inf_norm(traj.grid, u.component(0), ut.component(0));
        rep.t.push_back(traj.time(k));
        rep.w1inf.push_back(w);
        rep.K = std::max(rep.K, w);
        double e = std::numeric_limits<double>::quiet_NaN();
        if (k % stride == 0 || k == K) {
            const Jet J = compat_jets(u, ut, model, opt.s + 1, {}, traj.time(k));
            e = energy_norm(J, {NormFamily::E_s, 0, opt.s + 1, 0, NormRegion::Torus}).value;
            if (std::isfinite(e) && e > 0.0) {
                ts.push_back(traj.time(k));
                logs.push_back(std::log(e));
            } else if (!std::isfinite(e)) {
                finite = false;
            }
        }
        rep.high.push_back(e);
    }
    if (ts.size() >= 2) {
        double mt = 0.0, ml = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            mt += ts[i];
            ml += logs[i];
        }
        mt /= static_cast<double>(ts.size());
        ml /= static_cast<double>(ts.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            num += (ts[i] - mt) * (logs[i] - ml);
            den += (ts[i] - mt) * (ts[i] - mt);
        }
        rep.growth_rate = den > 0.0 ? num / den : 0.0;
    }
    rep.CK = std::max(rep.K, 0.5);
    rep.sigma_min = smallest_singular_value(comparison_matrix(opt.s, delta, rep.CK), opt.s);
    for (int j = 0; j <= 30; ++j) {
        const double d = std::ldexp(1.0, -j);
        if (smallest_singular_value(comparison_matrix(opt.s, d, rep.CK), opt.s) >= opt.sigma_floor) {
            rep.delta0 = d;
            break;
        }
    }
    rep.cap_exceeded = rep.K > opt.w1inf_cap;
    rep.t_stop = traj.time(K);
    if (rep.cap_exceeded)
        rep.verdict = Verdict::BlowupSuspected;
    else if (finite && rep.growth_rate < opt.growth_cap)
        rep.verdict = Verdict::Continuable;
    else
        rep.verdict = Verdict::Inconclusive;
    return rep;
}

ContinuationReport evolve_and_monitor(ModelPtr model, const Jet& data, double T, double delta,
                                      const ContinuationOptions& opt, Trajectory* out) {
    LinearProblem lp;
    lp.model = model;
    lp.data = data;
    lp.T = T;
    lp.trace_stride = 0;
    lp.abort_on_blowup = false;
    const TorusGrid g = data.grid();
    lp.monitor = [&](int, std::span<const double> u, std::span<const double> ut) {
        return w1inf_norm(g, u, ut) <= opt.w1inf_cap;
    };
    LinearSolution sol = solve_linear(lp);
    ContinuationReport rep = continuation_monitor(sol.traj, *model, delta, opt);
    if (sol.stopped) {
        rep.cap_exceeded = true;
        rep.verdict = Verdict::BlowupSuspected;
    }
    if (out) *out = std::move(sol.traj);
    return rep;
}

CsvTable iteration_table(const std::vector<IterationState>& history) {
    CsvTable t({"iteration", "T", "R", "high_norm", "distance", "ratio"});
    for (const auto& st : history)
        t.add({static_cast<long long>(st.index), st.T, st.R, st.high_norm, st.distance,
               st.ratio ? *st.ratio : std::numeric_limits<double>::quiet_NaN()});
    return t;
}

CsvTable continuation_table(const ContinuationReport& rep) {
    CsvTable t({"t", "w1inf", "high_norm"});
    for (std::size_t i = 0; i < rep.t.size(); ++i) t.add({rep.t[i], rep.w1inf[i], rep.high[i]});
    return t;
}

}  // namespace tw
