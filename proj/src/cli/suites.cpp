#include "transwave/suites.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "transwave/elliptic.hpp"
#include "transwave/errors.hpp"
#include "transwave/norms.hpp"
#include "transwave/parallel.hpp"
#include "transwave/quasilinear.hpp"
#include "transwave/timejets.hpp"

namespace tw {
namespace {

using Fn = std::function<double(const Point&)>;

GridFunction sample(const TorusGrid& g, const Fn& f) { return GridFunction::sample(g, f); }

double max_abs(const GridFunction& f) { return par::max_abs(f.values()); }

CriterionResult make(bool pass, std::string detail) {
    CriterionResult r;
    r.pass = pass;
    r.detail = std::move(detail);
    return r;
}

// --- 1: compatibility jets against the flat hand recursion -------------------

CriterionResult compat_oracle() {
    const TorusGrid g(1, 64);
    const auto model = make_model("flat");
    const auto u0 = sample(g, [](const Point& x) { return std::sin(M_PI * x[0]) + 0.5 * std::cos(3 * M_PI * x[0]); });
    const auto u1 = sample(g, [](const Point& x) { return std::cos(2 * M_PI * x[0]) - 0.25 * std::sin(5 * M_PI * x[0]); });
    const int s = 4;
    const Jet J = compat_jets(u0, u1, *model, s);
    std::vector<GridFunction> hand{u0, u1};
    for (int l = 2; l <= s; ++l) {
        const auto& prev = hand[static_cast<std::size_t>(l - 2)];
        hand.emplace_back(g, 1, laplacian(g, prev.values()));
    }
    CsvTable t({"level", "rel_error"});
    double worst = 0.0;
    for (int l = 0; l <= s; ++l) {
        const double e = max_abs(J[static_cast<std::size_t>(l)] - hand[static_cast<std::size_t>(l)]) /
                         max_abs(hand[static_cast<std::size_t>(l)]);
        worst = std::max(worst, e);
        t.add({static_cast<long long>(l), e});
    }
    auto r = make(worst <= 1e-12, fmt::format("max relative jet error {:.2e} (s = 4, N = 64)", worst));
    r.tables.emplace_back("compat_jets.csv", std::move(t));
    return r;
}

// --- 2: μ localization ------------------------------------------------------

CriterionResult mu_localization() {
    CsvTable t({"model", "n", "eta0", "four_h", "max_mu"});
    bool pass = true;
    std::string detail;
    for (const char* id : {"flat", "variable"}) {
        for (int n : {1, 2}) {
            const TorusGrid g(n, 64);
            const int a = g.normal_axis();
            const auto u0 = sample(g, [&](const Point& x) { return 0.1 * std::cos(M_PI * x[a]) + 0.05 * std::sin(M_PI * x[0]); });
            const auto u1 = sample(g, [&](const Point& x) { return 0.1 * std::sin(M_PI * x[a]); });
            const ProjectedProblem pp = project_to_torus(make_model(id), u0, u1, 3);
            double mx = 0.0;
            for (const auto& m : pp.mu) mx = std::max(mx, max_abs(m));
            const double four_h = 4.0 * g.spacing();
            pass = pass && pp.eta0 >= four_h && mx > 0.0;
            t.add({std::string(id), static_cast<long long>(n), pp.eta0, four_h, mx});
            detail += fmt::format("{}/n={}: eta0 = {} ", id, n, pp.eta0);
        }
    }
    auto r = make(pass, detail + "(4h = 0.125)");
    r.tables.emplace_back("mu_localization.csv", std::move(t));
    return r;
}

// --- 3: linear solver order -------------------------------------------------

CriterionResult solver_order() {
    const std::vector<int> Ns{32, 64, 128};
    CsvTable t({"startup", "N", "error", "order"});
    std::vector<double> ej, en;
    for (int N : Ns) ej.push_back(manufactured_error(make_model("manufactured"), 1, N, 1.0, 4, Startup::jet));
    for (int N : Ns) en.push_back(manufactured_error(make_model("manufactured"), 1, N, 1.0, 4, Startup::naive));
    auto order = [](const std::vector<double>& e, std::size_t i) { return std::log2(e[i - 1] / e[i]); };
    bool jet_ok = true;
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        const double oj = i ? order(ej, i) : std::numeric_limits<double>::quiet_NaN();
        const double on = i ? order(en, i) : std::numeric_limits<double>::quiet_NaN();
        if (i) jet_ok = jet_ok && std::fabs(oj - 2.0) <= 0.2;
        t.add({std::string("jet"), static_cast<long long>(Ns[i]), ej[i], oj});
        t.add({std::string("naive"), static_cast<long long>(Ns[i]), en[i], on});
    }
    const double oj = order(ej, 2), on = order(en, 2);
    // Negative test: the naive start must lose order and accuracy on the finest pair.
    const bool naive_degrades = on < oj - 0.05 && en.back() > 1.1 * ej.back();
    auto r = make(jet_ok && naive_degrades,
                  fmt::format("jet orders {:.3f}, {:.3f}; naive finest order {:.3f}, error ratio naive/jet {:.3f}",
                              order(ej, 1), oj, on, en.back() / ej.back()));
    r.tables.emplace_back("solver_order.csv", std::move(t));
    return r;
}

// --- 4: finite propagation speed --------------------------------------------

CriterionResult propagation_speed() {
    CsvTable t({"model", "n", "c_max", "leak_stencil_cone", "leak_physical_cone"});
    bool pass = true;
    std::string detail;
    for (const char* id : {"flat", "variable"}) {
        for (int n : {1, 2}) {
            const TorusGrid g(n, n == 1 ? 128 : 48);
            const auto model = make_model(id);
            const int a = g.normal_axis();
            Point x0{};
            x0[static_cast<std::size_t>(a)] = 0.3;
            const double r = 0.2;
            const auto base = sample(g, [&](const Point& x) { return 0.2 * std::sin(M_PI * x[a]); });
            const auto bump = sample(g, [&](const Point& x) {
                const double d = torus_distance(x, x0, n);
                return d < r ? std::pow(1.0 - d * d / (r * r), 4) : 0.0;
            });
            LinearProblem pa, pb;
            pa.model = pb.model = model;
            pa.T = pb.T = 0.5;
            pa.trace_stride = pb.trace_stride = 0;
            pa.data = compat_jets(base + bump, GridFunction(g), *model, 3);
            pb.data = compat_jets(base, GridFunction(g), *model, 3);
            const SpeedReport rep = speed_check(pa, pb, x0, r);
            const bool flat = std::string(id) == "flat";
            pass = pass && rep.max_numerical <= 1e-10 && (!flat || rep.max_numerical == 0.0);
            t.add({std::string(id), static_cast<long long>(n), rep.c_max, rep.max_numerical, rep.max_physical});
            detail += fmt::format("{}/n={}: {:.1e} ", id, n, rep.max_numerical);
        }
    }
    auto r = make(pass, "leakage outside the stencil cone: " + detail);
    r.tables.emplace_back("propagation_speed.csv", std::move(t));
    return r;
}

// --- 5: weak energy estimate ------------------------------------------------

CriterionResult energy_estimate() {
    const double c = calibrated_energy_constant();
    CsvTable t({"problem", "c", "fitted", "min_margin", "t1", "t2"});
    bool pass = true;
    double worst = std::numeric_limits<double>::infinity();
    auto run = [&](const std::string& name, LinearProblem pb) {
        pb.T = 2.0;
        const LinearSolution sol = solve_linear(pb);
        const MarginReport m = energy_estimate_check(sol.trace, c);
        pass = pass && m.min_margin >= 0.0;
        worst = std::min(worst, m.min_margin);
        t.add({name, c, fit_energy_constant(sol.trace), m.min_margin, m.t1, m.t2});
    };
    const TorusGrid g(1, 64);
    const auto wave = sample(g, [](const Point& x) { return std::cos(M_PI * x[0]) + 0.3 * std::sin(3 * M_PI * x[0]); });
    const auto zero = GridFunction(g);
    for (const auto& [id, params] : std::vector<std::pair<std::string, ModelParams>>{
             {"flat", {}}, {"flat", {{"h0", 1.0}, {"f0", 0.5}}}, {"variable", {}}, {"variable", {{"h0", 0.5}}}}) {
        LinearProblem pb;
        pb.model = make_model(id, params);
        pb.data = compat_jets(wave, zero, *pb.model, 2);
        run(fmt::format("{}{}", id, params.empty() ? "" : "+sources"), pb);
    }
    {
        LinearProblem pb;
        pb.model = make_model("manufactured");
        const auto u0 = sample(g, [&](const Point& x) { return pb.model->exact(0.0, x, 1).first; });
        const auto u1 = sample(g, [&](const Point& x) { return pb.model->exact(0.0, x, 1).second; });
        pb.data = compat_jets(u0, u1, *pb.model, 2);
        run("manufactured", pb);
    }
    {
        const ProjectedProblem pp = project_to_torus(make_model("variable", {{"h0", 0.5}}), wave.scaled(0.1), zero, 3);
        LinearProblem pb;
        pb.model = pp.model;
        pb.psi = pp.psi;
        pb.mu = pp.mu;
        pb.zeta = 0.5;
        pb.data = pp.jet;
        run("projected", pb);
    }
    auto r = make(pass, fmt::format("c = {:.4f}; smallest margin {:.4e} over 6 problems", c, worst));
    r.tables.emplace_back("energy_margin.csv", std::move(t));
    return r;
}

// --- 6: Born series ---------------------------------------------------------

BlockSystem born_corpus(double eps) {
    const TorusGrid g(1, 64);
    const auto model = make_model("variable");
    const auto u0 = sample(g, [](const Point& x) { return std::cos(M_PI * x[0]); });
    return born_system(*model, compat_jets(u0, GridFunction(g), *model, 3), eps);
}

CriterionResult born_series() {
    CsvTable t = born_table();
    auto diag_at = [&](double eps) {
        const BlockSystem sys = born_corpus(eps);
        BornDiagnostics d = born_iterate(sys, born_rhs(sys)).diag;
        append_born_rows(t, eps, d);
        return d;
    };
    // Bracket the divergence threshold by doubling, then bisect.
    double lo = 0.0, hi = 0.0;
    for (double eps = 0.01; eps < 1e3; eps *= 2.0) {
        if (diag_at(eps).diverged) {
            hi = eps;
            break;
        }
        lo = eps;
    }
    if (hi == 0.0) return make(false, "no divergence found up to eps = 1e3");
    for (int i = 0; i < 6; ++i) {
        const double mid = 0.5 * (lo + hi);
        (diag_at(mid).diverged ? hi : lo) = mid;
    }
    bool triggers = false;
    try {
        const BlockSystem sys = born_corpus(hi);
        born_solve(sys, born_rhs(sys));
    } catch (const DivergentBornSeries&) {
        triggers = true;
    }
    const double e1 = hi / 8.0;
    const double r1 = rho_hat(diag_at(e1)), r2 = rho_hat(diag_at(2.0 * e1));
    const double lin = r2 / r1;
    const BornDiagnostics half = diag_at(0.5 * hi);
    const bool pass = triggers && std::fabs(lin - 2.0) <= 0.4 && half.converged && half.fit_residual <= 0.1;
    auto r = make(pass, fmt::format("threshold eps* in ({:.4f}, {:.4f}]; rho({:.3f}) = {:.4f}, rho(2x) = {:.4f}, ratio "
                                    "{:.3f}; at eps*/2: rho = {:.3f}, fit residual {:.4f}",
                                    lo, hi, e1, r1, r2, lin, std::exp(half.slope), half.fit_residual));
    r.tables.emplace_back("born_sweep.csv", std::move(t));
    return r;
}

// --- 7, 8: Picard contraction and uniqueness ---------------------------------

struct PicardCase {
    std::string name;
    QuasilinearProblem problem;
};

std::vector<PicardCase> picard_corpus() {
    const TorusGrid g(1, 64);
    const auto model = make_model("quasilinear");
    std::vector<PicardCase> out;
    const std::vector<std::pair<Fn, Fn>> data{
        {[](const Point& x) { return 0.1 * std::cos(M_PI * x[0]); }, [](const Point& x) { return 0.1 * std::sin(M_PI * x[0]); }},
        {[](const Point&) { return 0.0; }, [](const Point& x) { return 0.1 * std::sin(M_PI * x[0]); }},
    };
    const char* names[] = {"cos-sin", "rest-sin"};
    for (std::size_t i = 0; i < data.size(); ++i) {
        QuasilinearProblem pb;
        pb.model = model;
        pb.data = compat_jets(sample(g, data[i].first), sample(g, data[i].second), *model, 3);
        pb.T = 0.5;
        pb.tol = 1e-8;
        out.push_back({names[i], pb});
    }
    return out;
}

CriterionResult picard_contraction() {
    CsvTable t({"case", "phase", "iteration", "T", "R", "high_norm", "distance", "ratio"});
    bool pass = true;
    std::string detail;
    for (const auto& c : picard_corpus()) {
        const QuasilinearResult res = solve_quasilinear(c.problem);
        double rmax = 0.0;
        bool in_ball = true;
        for (double rn : res.ratios) rmax = std::max(rmax, rn);
        for (const auto& st : res.history) {
            if (st.T == res.T) in_ball = in_ball && st.high_norm <= st.R;
            t.add({c.name, std::string("auto"), static_cast<long long>(st.index), st.T, st.R, st.high_norm, st.distance,
                   st.ratio ? *st.ratio : std::numeric_limits<double>::quiet_NaN()});
        }
        auto r1_at = [&](double T) {
            try {
                const auto h = picard_history(c.problem, T, 2);
                for (const auto& st : h)
                    t.add({c.name, fmt::format("fixed T={}", T), static_cast<long long>(st.index), st.T, st.R,
                           st.high_norm, st.distance, st.ratio ? *st.ratio : std::numeric_limits<double>::quiet_NaN()});
                return h.size() > 1 && h[1].ratio ? *h[1].ratio : std::numeric_limits<double>::quiet_NaN();
            } catch (const Error&) {
                return std::numeric_limits<double>::quiet_NaN();
            }
        };
        const double a = r1_at(res.T), b = r1_at(2.0 * res.T);
        const double factor = b / a;
        const bool ok = rmax <= 0.5 && in_ball && factor >= 1.5 && factor <= 3.0;
        pass = pass && ok;
        detail += fmt::format("[{}: T = {}, max r_n = {:.2e}, r1(T) = {:.3e}, r1(2T) = {:.3e}, factor {:.2f}] ", c.name,
                              res.T, rmax, a, b, factor);
    }
    auto r = make(pass, detail);
    r.tables.emplace_back("picard.csv", std::move(t));
    return r;
}

CriterionResult uniqueness() {
    CsvTable t({"case", "seeds", "T", "tol", "max_distance"});
    bool pass = true;
    std::string detail;
    for (const auto& c : picard_corpus()) {
        for (const auto& [sa, sb] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 7}, {3, 11}}) {
            const UniquenessReport u = uniqueness_probe(c.problem, sa, sb);
            pass = pass && u.max_distance <= 10.0 * u.tol;
            t.add({c.name, fmt::format("{}/{}", sa, sb), u.T, u.tol, u.max_distance});
            detail += fmt::format("{}({}/{}): {:.2e} ", c.name, sa, sb, u.max_distance);
        }
    }
    auto r = make(pass, detail + "(bound 1e-7)");
    r.tables.emplace_back("uniqueness.csv", std::move(t));
    return r;
}

// --- 9: scaling --------------------------------------------------------------

CriterionResult scaling() {
    std::vector<ScalingRow> all;
    double worst = 1.0;
    for (auto role : {ScalingRole::f_sigma, ScalingRole::g_ell, ScalingRole::h_ell}) {
        std::vector<std::vector<ScalingRow>> byN;
        for (int N : {128, 256}) {
            const TorusGrid g(1, N);
            const auto f = sample(g, [](const Point& x) {
                return std::cos(M_PI * x[0]) + (x[0] > 0 ? x[0] * x[0] : 0.0) + 0.3 * std::sin(2 * M_PI * x[0]);
            });
            byN.push_back(scaling_check(f, role, 2, 1, {1.0, 0.5, 0.25}));
            all.insert(all.end(), byN.back().begin(), byN.back().end());
        }
        for (std::size_t i = 0; i < byN[0].size(); ++i) {
            const auto& a = byN[0][i];
            const auto& b = byN[1][i];
            worst = std::max({worst, a.ratio / b.ratio, b.ratio / a.ratio, a.half_box_ratio / b.half_box_ratio,
                              b.half_box_ratio / a.half_box_ratio});
        }
    }
    auto r = make(worst <= 2.0, fmt::format("largest ratio change under N doubling: x{:.4f}", worst));
    r.tables.emplace_back("scaling.csv", scaling_table(all));
    return r;
}

// --- 10: elliptic regularity gain -------------------------------------------

CriterionResult regularity() {
    CsvTable t({"N", "function", "ratio"});
    std::vector<std::vector<double>> byN;
    for (int N : {64, 128, 256}) {
        const TorusGrid g(1, N);
        const auto psi = bump_psi(g, standard_bump(1));
        std::vector<double> row;
        const auto corpus = regularity_corpus(g);
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            row.push_back(regularity_gain_check(corpus[i], 0, psi));
            t.add({static_cast<long long>(N), static_cast<long long>(i), row.back()});
        }
        byN.push_back(row);
    }
    double worst = 1.0;
    for (std::size_t j = 1; j < byN.size(); ++j)
        for (std::size_t i = 0; i < byN[j].size(); ++i)
            worst = std::max({worst, byN[j][i] / byN[j - 1][i], byN[j - 1][i] / byN[j][i]});
    auto r = make(worst <= 2.0, fmt::format("largest ratio change under N doubling: x{:.4f}", worst));
    r.tables.emplace_back("regularity.csv", std::move(t));
    return r;
}

// --- 11: continuation dichotomy ---------------------------------------------

CriterionResult continuation() {
    const TorusGrid g(1, 64);
    ContinuationOptions opt;
    const double delta = 0.01;
    const auto small = make_model("quasilinear", {{"h0", 0.05}});
    const auto u0 = sample(g, [](const Point& x) { return 0.1 * std::cos(M_PI * x[0]); });
    const auto u1 = sample(g, [](const Point& x) { return 0.1 * std::sin(M_PI * x[0]); });
    const ContinuationReport a = evolve_and_monitor(small, compat_jets(u0, u1, *small, opt.s), 2.0, delta, opt);
    const auto ric = make_model("riccati");
    const auto v1 = sample(g, [](const Point& x) { return 4.0 * std::cos(M_PI * x[0]); });
    const ContinuationReport b =
        evolve_and_monitor(ric, compat_jets(GridFunction(g), v1, *ric, opt.s), 2.0, delta, opt);
    double last_high = std::numeric_limits<double>::quiet_NaN();
    for (double e : b.high)
        if (!std::isnan(e)) last_high = e;
    const bool small_ok = a.verdict == Verdict::Continuable && a.K <= opt.w1inf_cap && a.sigma_min > opt.sigma_floor &&
                          delta <= a.delta0;
    const bool large_ok = b.verdict == Verdict::BlowupSuspected && b.cap_exceeded && std::isfinite(last_high);
    CsvTable t({"run", "verdict", "sup_w1inf", "growth_rate", "sigma_min", "delta0", "t_stop", "final_high_norm"});
    double last_a = std::numeric_limits<double>::quiet_NaN();
    for (double e : a.high)
        if (!std::isnan(e)) last_a = e;
    t.add({std::string("small"), verdict_name(a.verdict), a.K, a.growth_rate, a.sigma_min, a.delta0, a.t_stop, last_a});
    t.add({std::string("large"), verdict_name(b.verdict), b.K, b.growth_rate, b.sigma_min, b.delta0, b.t_stop, last_high});
    auto r = make(small_ok && large_ok,
                  fmt::format("small: {} (W1inf {:.3f}, sigma_min {:.3f}, delta0 {}); large: {} at t = {:.4f} (W1inf "
                              "{:.1f} > cap {}, E^(s+1) = {:.3e} finite)",
                              verdict_name(a.verdict), a.K, a.sigma_min, a.delta0, verdict_name(b.verdict), b.t_stop,
                              b.K, opt.w1inf_cap, last_high));
    r.tables.emplace_back("continuation.csv", std::move(t));
    r.tables.emplace_back("continuation_small.csv", continuation_table(a));
    r.tables.emplace_back("continuation_large.csv", continuation_table(b));
    return r;
}

// --- 12: determinism ----------------------------------------------------------

CriterionResult determinism() {
    const int saved = par::threads();
    std::vector<std::vector<std::pair<std::string, std::string>>> runs;
    for (int threads : {1, 4, 1}) {
        par::set_threads(threads);
        runs.push_back(determinism_payload());
    }
    par::set_threads(saved);
    bool same = true;
    std::size_t bytes = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) same = same && runs[i] == runs[0];
    for (const auto& [name, body] : runs[0]) bytes += body.size();
    return make(same, fmt::format("{} tables ({} bytes) identical across threads 1, 4, 1", runs[0].size(), bytes));
}

}  // namespace

double rho_hat(const BornDiagnostics& d) {
    if (d.increments.size() >= 5) return std::exp(d.slope);
    return d.rho.empty() ? 0.0 : d.rho.back();
}

BlockSystem born_system(const CoefficientModel& model, const Jet& jet, double eps) {
    const TorusGrid& g = jet.grid();
    auto b = metric_jets(model, jet);
    const std::size_t c = g.ravel({g.resolution() / 2, g.resolution() / 2, g.resolution() / 2});
    for (auto& comp : b) {
        const double m = comp[0].at(c);
        comp[0] = comp[0] - sample(g, [&](const Point&) { return m; });
    }
    return assemble_block_system(std::move(b), bump_psi(g, standard_bump(g.dim())), jet.order(), eps);
}

BlockVector born_rhs(const BlockSystem& sys) {
    BlockVector K;
    for (int k = 0; k < sys.s; ++k)
        K.push_back(sample(sys.grid, [&](const Point& x) { return std::sin(M_PI * (k + 1) * x[0]); }));
    return K;
}

std::vector<std::pair<std::string, std::string>> determinism_payload() {
    std::vector<std::pair<std::string, std::string>> out;
    {
        // Large enough (2D, 192²) for the block-parallel paths to engage.
        const TorusGrid g(2, 192);
        LinearProblem pb;
        pb.model = make_model("variable", {{"h0", 0.5}});
        const auto u0 = sample(g, [](const Point& x) { return std::sin(M_PI * x[1]) * std::cos(M_PI * x[0]); });
        pb.data = compat_jets(u0, GridFunction(g), *pb.model, 2);
        pb.T = 0.05;
        const LinearSolution sol = solve_linear(pb);
        out.emplace_back("trace.csv", trace_table(sol.trace).str());
        const auto psi = bump_psi(g, standard_bump(2));
        const auto w = helmholtz_solve(u0, psi, 1e-8);
        CsvTable t({"norm"});
        t.add({sobolev_norm(w, 2, NormRegion::Omega).value});
        out.emplace_back("helmholtz.csv", t.str());
    }
    {
        CsvTable t = born_table();
        for (double eps : {0.3, 1.2}) {
            const BlockSystem sys = born_corpus(eps);
            append_born_rows(t, eps, born_iterate(sys, born_rhs(sys)).diag);
        }
        out.emplace_back("born.csv", t.str());
    }
    {
        auto cases = picard_corpus();
        out.emplace_back("picard.csv", iteration_table(solve_quasilinear(cases[0].problem).history).str());
    }
    return out;
}

std::vector<Criterion> acceptance_criteria() {
    return {
        {1, "compatibility-jet oracle", 1.0, compat_oracle},
        {2, "mu localization", 5.0, mu_localization},
        {3, "linear solver order", 30.0, solver_order},
        {4, "finite propagation speed", 30.0, propagation_speed},
        {5, "weak energy estimate", 60.0, energy_estimate},
        {6, "Born series", 60.0, born_series},
        {7, "Picard contraction", 120.0, picard_contraction},
        {8, "uniqueness probe", 120.0, uniqueness},
        {9, "scaling ratios", 30.0, scaling},
        {10, "elliptic regularity gain", 60.0, regularity},
        {11, "continuation dichotomy", 120.0, continuation},
        {12, "determinism", 0.0, determinism},
    };
}

CriterionResult run_criterion(const Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = c.run();
    } catch (const std::exception& e) {
        r = make(false, fmt::format("exception: {}", e.what()));
    }
    r.id = c.id;
    r.name = c.name;
    r.budget = c.budget;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0.0 && r.seconds > c.budget) {
        r.pass = false;
        r.detail += fmt::format(" [runtime {:.2f} s over budget {} s]", r.seconds, c.budget);
    }
    return r;
}

}  // namespace tw
