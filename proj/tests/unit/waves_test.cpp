#include <algorithm>

#include <doctest.h>

#include "common.hpp"
#include "transwave/errors.hpp"
#include "transwave/timejets.hpp"
#include "transwave/waves.hpp"

using namespace tw;

namespace {

LinearProblem flat_problem(int N, double T) {
    const TorusGrid g(1, N);
    LinearProblem pb;
    pb.model = make_model("flat");
    pb.data = compat_jets(test::standing(g, 2.0), GridFunction(g), *pb.model, 2);
    pb.T = T;
    return pb;
}

}  // namespace

TEST_CASE("flat leapfrog conserves the discrete energy") {
    const auto sol = solve_linear(flat_problem(64, 2.0));
    const auto& e = sol.trace.discrete;
    REQUIRE(!e.empty());
    double worst = 0.0;
    for (double v : e) worst = std::max(worst, std::fabs(v - e[0]) / e[0]);
    CHECK(worst <= 1e-8);
    CHECK(sol.traj.steps() * sol.traj.dt == doctest::Approx(2.0));
}

TEST_CASE("time step above the stable bound is rejected") {
    auto pb = flat_problem(32, 0.5);
    pb.dt = 2.0 * stable_dt(*pb.model, pb.data.grid());
    CHECK_THROWS_AS(solve_linear(pb), CflViolation);
}

TEST_CASE("manufactured solution converges at second order") {
    const auto model = make_model("manufactured");
    const double e1 = manufactured_error(model, 1, 32, 0.5, 2, Startup::jet);
    const double e2 = manufactured_error(model, 1, 64, 0.5, 2, Startup::jet);
    CHECK(e1 / e2 > 3.0);
}

TEST_CASE("disturbances stay inside the stencil cone") {
    auto a = flat_problem(128, 0.5);
    auto b = a;
    const TorusGrid& g = a.data.grid();
    const Point x0{0.0, 0.0, 0.5};
    const double r = 0.1;
    const auto bump = GridFunction::sample(g, [&](const Point& x) {
        const double d = std::fabs(x[0] - x0[0]);
        return d < r ? std::pow(1 - d * d / (r * r), 4) : 0.0;
    });
    b.data = compat_jets(a.data[0] + bump, a.data[1], *a.model, 2);
    // x0 lives on the normal axis, which is axis 0 in 1D.
    const Point c{0.0, 0.0, 0.0};
    const auto rep = speed_check(a, b, c, r);
    CHECK(rep.max_numerical == 0.0);
}

TEST_CASE("energy estimate holds with the calibrated constant") {
    auto pb = flat_problem(64, 1.0);
    pb.model = make_model("variable", {{"h0", 0.5}});
    pb.data = compat_jets(pb.data[0], pb.data[1], *pb.model, 2);
    const auto sol = solve_linear(pb);
    CHECK(energy_estimate_check(sol.trace, calibrated_energy_constant()).min_margin >= 0.0);
}
