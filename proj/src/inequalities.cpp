#include "transwave/inequalities.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "transwave/errors.hpp"
#include "transwave/norms.hpp"
#include "transwave/series.hpp"

namespace tw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Piecewise function: one formula per side, interface points take the average of the two limits.
GridFunction piecewise(const TorusGrid& g, const std::function<double(double)>& omega,
                       const std::function<double(double)>& omega_c) {
    return GridFunction::sample(g, [&](const Point& x) {
        const double y = x[g.dim() - 1];
        if (y > 0.0) return omega(y);
        if (y < 0.0 && y > -1.0) return omega_c(y);
        if (y == 0.0) return 0.5 * (omega(0.0) + omega_c(0.0));
        return 0.5 * (omega(1.0) + omega_c(-1.0));
    });
}

double bump(double r) { return std::fabs(r) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0; }

GridFunction product(const GridFunction& a, const GridFunction& b) { return a * b; }

GridFunction map(const GridFunction& u, const std::function<double(double)>& f) {
    std::vector<double> v(u.values().begin(), u.values().end());
    for (double& x : v) x = f(x);
    return GridFunction(u.grid(), u.components(), std::move(v));
}

double lp(const GridFunction& f, double p) {
    NormOptions o;
    o.p = p;
    return lp_norm(f, NormRegion::Omega, o);
}

double wsp(const GridFunction& f, int s, double p) {
    NormOptions o;
    o.p = p;
    return sobolev_norm(f, s, NormRegion::Omega, o).value;
}

double ratio(double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : 0.0; }

std::string pstr(double p) { return std::isinf(p) ? "inf" : fmt::format("{}", p); }

// C^{0,mu} norm over the closure of Ω (one-sided interface limits).
double holder_norm(const GridFunction& f, double mu) {
    const TorusGrid& g = f.grid();
    const RegionView view(g, NormRegion::Omega);
    const auto side = view.side_values(f.component(0));
    std::vector<std::size_t> pts;
    for (std::size_t p = 0; p < g.size(); ++p)
        if (view.contains(p)) pts.push_back(p);
    // Interface point x^n = ±1 belongs to the Ω closure at x^n = +1.
    auto xn = [&](std::size_t p) {
        const int j = g.normal_index(p);
        return j == 0 ? 1.0 : g.coord(j);
    };
    double sup = 0.0, semi = 0.0;
    for (std::size_t a = 0; a < pts.size(); ++a) {
        sup = std::max(sup, std::fabs(side[pts[a]]));
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            const double d = std::fabs(xn(pts[a]) - xn(pts[b]));
            semi = std::max(semi, std::fabs(side[pts[a]] - side[pts[b]]) / std::pow(d, mu));
        }
    }
    return sup + semi;
}

using Check = std::function<double(const std::vector<GridFunction>&)>;

struct ParamCheck {
    std::string params;
    Check measure;
};

double over_pairs(const std::vector<GridFunction>& c, const std::function<double(const GridFunction&, const GridFunction&)>& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i; j < c.size(); ++j) m = std::max(m, f(c[i], c[j]));
    return m;
}

double over_each(const std::vector<GridFunction>& c, const std::function<double(const GridFunction&)>& f) {
    double m = 0.0;
    for (const auto& u : c) m = std::max(m, f(u));
    return m;
}

std::vector<ParamCheck> checks_for(Inequality which) {
    std::vector<ParamCheck> out;
    switch (which) {
        case Inequality::holder:
            for (auto [p, q, r] : {std::tuple{2.0, 2.0, 1.0}, {kInf, 2.0, 2.0}, {1.0, kInf, 1.0}})
                out.push_back({fmt::format("p={};q={};r={}", pstr(p), pstr(q), pstr(r)), [=](const auto& c) {
                                   return over_pairs(c, [&](const GridFunction& u, const GridFunction& v) {
                                       return ratio(lp(product(u, v), r), lp(u, p) * lp(v, q));
                                   });
                               }});
            break;
        case Inequality::sobolev_embed:
            for (auto [s, p, mu] : {std::tuple{1, 2.0, 0.5}, {2, 1.0, 1.0}, {2, 2.0, 1.0}})
                out.push_back({fmt::format("s={};p={};mu={}", s, pstr(p), mu), [=](const auto& c) {
                                   return over_each(c, [&](const GridFunction& u) {
                                       return ratio(holder_norm(u, mu), wsp(u, s, p));
                                   });
                               }});
            break;
        case Inequality::interpolation:
            for (double p : {1.0, 2.0, kInf})
                out.push_back({fmt::format("k=1;s=2;p={};eps0=1", pstr(p)), [=](const auto& c) {
                                   return over_each(c, [&](const GridFunction& u) {
                                       NormOptions o;
                                       o.p = p;
                                       const double k1 = sobolev_seminorm(u, 1, NormRegion::Omega, o);
                                       const double k2 = sobolev_seminorm(u, 2, NormRegion::Omega, o);
                                       const double l = lp(u, p);
                                       double m = 0.0;
                                       for (int j = 0; j <= 16; ++j) {
                                           const double e = std::ldexp(1.0, -j);
                                           m = std::max(m, ratio(k1, e * k2 + l / e));
                                       }
                                       return m;
                                   });
                               }});
            break;
        case Inequality::multiplication:
            for (auto [s1, s2, s3] : {std::tuple{1, 1, 1}, {2, 1, 1}, {2, 2, 2}})
                out.push_back({fmt::format("s1={};s2={};s3={};p=2", s1, s2, s3), [=](const auto& c) {
                                   return over_pairs(c, [&](const GridFunction& u, const GridFunction& v) {
                                       return ratio(wsp(product(u, v), s3, 2.0), wsp(u, s1, 2.0) * wsp(v, s2, 2.0));
                                   });
                               }});
            break;
        case Inequality::gagliardo_nirenberg:
            for (auto [q, r] : {std::pair{kInf, 4.0}, {2.0, 2.0}})
                out.push_back({fmt::format("alpha=1;s=2;p=2;q={};r={}", pstr(q), pstr(r)), [=](const auto& c) {
                                   return over_each(c, [&](const GridFunction& u) {
                                       NormOptions o;
                                       o.p = r;
                                       const double lhs = sobolev_seminorm(u, 1, NormRegion::Omega, o);
                                       return ratio(lhs, std::sqrt(lp(u, q)) * std::sqrt(wsp(u, 2, 2.0)));
                                   });
                               }});
            break;
        case Inequality::moser: {
            const std::vector<std::pair<std::string, std::function<double(double)>>> fs = {
                {"u^2", [](double x) { return x * x; }}, {"sin(u)", [](double x) { return std::sin(x); }}};
            for (const auto& [name, f] : fs)
                for (int a : {1, 2})
                    out.push_back({fmt::format("f={};s=2;|alpha|={};p=2", name, a), [=](const auto& c) {
                                       return over_each(c, [&](const GridFunction& u) {
                                           const double lhs = sobolev_seminorm(map(u, f), a, NormRegion::Omega);
                                           return ratio(lhs, (1.0 + lp(u, kInf)) * wsp(u, 2, 2.0));
                                       });
                                   }});
            break;
        }
        case Inequality::elemE:
            for (auto [s1, s2, s3] : {std::tuple{1, 1, 1}, {2, 2, 2}, {2, 1, 1}})
                out.push_back({fmt::format("s1={};s2={};s3={}", s1, s2, s3), [=](const auto& c) {
                                   return over_pairs(c, [&](const GridFunction& u, const GridFunction& v) {
                                       return ratio(intersect_norm(product(u, v), 0, s3).value,
                                                    intersect_norm(u, 0, s1).value * intersect_norm(v, 0, s2).value);
                                   });
                               }});
            break;
        case Inequality::fpropB:
            for (int l = 0; l <= 2; ++l)
                out.push_back({fmt::format("f=u^2;s=2;l={}", l), [=](const auto& c) {
                                   double m = 0.0;
                                   const int s = 2;
                                   for (std::size_t i = 0; i < c.size(); ++i) {
                                       std::vector<GridFunction> entries;
                                       for (int k = 0; k <= s; ++k)
                                           entries.push_back(c[(i + k) % c.size()].scaled(std::ldexp(1.0, -k)));
                                       const Jet jet(entries);
                                       // ∂_t^l (u²) at t = 0 from the series u(t) = Σ t^k/k! u_k.
                                       const TorusGrid& g = jet.grid();
                                       std::vector<double> d(g.size());
                                       for (std::size_t p = 0; p < g.size(); ++p) {
                                           Series u(0.0, s);
                                           for (int k = 0; k <= s; ++k) u[k] = jet[k].at(p) / factorial(k);
                                           d[p] = square(u).derivative_at_zero(l);
                                       }
                                       NormSpec spec;
                                       spec.family = NormFamily::Ec_s;
                                       spec.s = s;
                                       const double e = energy_norm(jet, spec).value;
                                       const double lhs = intersect_norm(GridFunction(g, 1, d), 0, s - l).value;
                                       m = std::max(m, ratio(lhs, e * (1.0 + e)));
                                   }
                                   return m;
                               }});
            break;
    }
    return out;
}

}  // namespace

std::vector<Inequality> all_inequalities() {
    return {Inequality::holder,      Inequality::sobolev_embed,       Inequality::interpolation, Inequality::multiplication,
            Inequality::gagliardo_nirenberg, Inequality::moser, Inequality::elemE, Inequality::fpropB};
}

std::string inequality_name(Inequality which) {
    switch (which) {
        case Inequality::holder: return "holder";
        case Inequality::sobolev_embed: return "sobolev_embed";
        case Inequality::interpolation: return "interpolation";
        case Inequality::multiplication: return "multiplication";
        case Inequality::gagliardo_nirenberg: return "gagliardo_nirenberg";
        case Inequality::moser: return "moser";
        case Inequality::elemE: return "elemE";
        case Inequality::fpropB: return "fpropB";
    }
    return "?";
}

Inequality parse_inequality(const std::string& name) {
    for (auto w : all_inequalities())
        if (inequality_name(w) == name) return w;
    throw InvalidArgument("unknown inequality " + name);
}

std::vector<GridFunction> inequality_corpus(const TorusGrid& g) {
    const int k = g.dim() - 1;
    std::vector<GridFunction> c;
    c.push_back(GridFunction::sample(g, [&](const Point& x) { return std::sin(2 * kPi * x[k]); }));
    c.push_back(GridFunction::sample(g, [&](const Point& x) { return std::cos(2 * kPi * x[k]) + 0.3 * std::sin(4 * kPi * x[k]); }));
    c.push_back(piecewise(g, [](double y) { return y * y; }, [](double y) { return 1.0 - y; }));
    c.push_back(piecewise(g, [](double y) { return 1.0 + y - y * y * y; }, [](double y) { return 0.5 * y * y; }));
    c.push_back(GridFunction::sample(g, [&](const Point& x) { return bump((x[k] - 0.5) / 0.3); }));
    c.push_back(GridFunction::sample(g, [&](const Point& x) { return 2.0 * bump((x[k] + 0.4) / 0.25); }));
    return c;
}

std::vector<InequalityRow> inequality_check(Inequality which, const std::vector<int>& resolutions) {
    std::vector<InequalityRow> rows;
    const auto checks = checks_for(which);
    for (int N : resolutions) {
        const auto corpus = inequality_corpus(make_grid(1, N));
        for (const auto& c : checks) rows.push_back({inequality_name(which), c.params, N, c.measure(corpus)});
    }
    return rows;
}

CsvTable inequality_table(const std::vector<InequalityRow>& rows) {
    CsvTable t({"inequality", "parameters", "N", "max_ratio"});
    for (const auto& r : rows) t.add({r.inequality, r.parameters, static_cast<long long>(r.N), r.max_ratio});
    return t;
}

}  // namespace tw
