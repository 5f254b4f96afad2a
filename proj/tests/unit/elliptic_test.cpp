#include <doctest.h>

#include "common.hpp"
#include "transwave/errors.hpp"
#include "transwave/model.hpp"
#include "transwave/norms.hpp"
#include "transwave/suites.hpp"
#include "transwave/timejets.hpp"

using namespace tw;

TEST_CASE("Helmholtz solve inverts the operator") {
    const TorusGrid g(2, 32);
    const auto psi = bump_psi(g, standard_bump(2));
    const auto rhs = test::standing(g);
    const auto rep = helmholtz_solve_report(rhs, psi, 1e-10);
    CHECK(rep.residual <= 1e-10);
    const auto back = apply_helmholtz(rep.w, psi);
    CHECK(lp_norm(back - rhs, NormRegion::Torus) <= 1e-8);
}

TEST_CASE("regularity gain is finite on the corpus") {
    const TorusGrid g(1, 64);
    const auto psi = bump_psi(g, standard_bump(1));
    const auto corpus = regularity_corpus(g);
    CHECK(corpus.size() == 5);
    for (const auto& u : corpus) {
        const double r = regularity_gain_check(u, 0, psi);
        CHECK(std::isfinite(r));
        CHECK(r > 0.0);
    }
}

TEST_CASE("Born series converges for small eps and diverges for large") {
    const TorusGrid g(1, 64);
    const auto model = make_model("variable");
    const auto u0 = test::standing(g);
    const Jet jet = compat_jets(u0, GridFunction(g), *model, 3);
    const auto small = born_system(*model, jet, 0.25);
    const auto r = born_solve(small, born_rhs(small));
    CHECK(r.diag.converged);
    CHECK(rho_hat(r.diag) < 0.5);
    const auto large = born_system(*model, jet, 8.0);
    CHECK_THROWS_AS(born_solve(large, born_rhs(large)), DivergentBornSeries);
}

TEST_CASE("L0 back-substitution inverts the unperturbed block operator") {
    const TorusGrid g(1, 32);
    const auto model = make_model("variable");
    const Jet jet = compat_jets(test::standing(g), GridFunction(g), *model, 3);
    const auto sys = born_system(*model, jet, 0.0);
    const auto y = born_rhs(sys);
    const auto x = solve_L0(sys, y);
    const auto back = apply_L0(sys, x);
    for (std::size_t k = 0; k < y.size(); ++k) CHECK(lp_norm(back[k] - y[k], NormRegion::Torus) <= 1e-8);
}
