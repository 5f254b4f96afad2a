#include <doctest.h>

#include "common.hpp"
#include "transwave/errors.hpp"
#include "transwave/model.hpp"
#include "transwave/norms.hpp"
#include "transwave/timejets.hpp"

using namespace tw;

TEST_CASE("flat jets follow the wave recursion") {
    const TorusGrid g(1, 128);
    const auto model = make_model("flat");
    const auto u0 = test::standing(g);
    const auto u1 = test::standing(g, 2.0);
    const Jet j = compat_jets(u0, u1, *model, 4);
    CHECK(j.order() == 4);
    // u_tt = Δu for the flat metric: sin(πx) ↦ −π² sin(πx) up to O(h²).
    CHECK(test::max_diff(j[2], u0.scaled(-M_PI * M_PI)) < 1e-2);
    CHECK(test::max_diff(j[3], u1.scaled(-4 * M_PI * M_PI)) < 1e-1);
}

TEST_CASE("taylor sum at zero returns the data") {
    const TorusGrid g(1, 32);
    const auto model = make_model("variable");
    const Jet j = compat_jets(test::standing(g), test::standing(g, 2.0), *model, 3);
    CHECK(test::max_diff(taylor_sum(j, 0.0), j[0]) == 0.0);
    CHECK(test::max_diff(taylor_sum_dt(j, 0.0), j[1]) == 0.0);
}

TEST_CASE("projection localizes the sources") {
    const TorusGrid g(1, 64);
    const auto pp = project_to_torus(make_model("variable"), test::standing(g), GridFunction(g), 2);
    CHECK(pp.eta0 >= 4 * g.spacing());
    CHECK(vanishing_box(pp.mu) == pp.eta0);
}

TEST_CASE("scaling parameters") {
    CHECK_THROWS_AS((ScalingParams{0.3, 2, 1}.validate()), InvalidArgument);
    CHECK_THROWS_AS((ScalingParams{0.5, 1, 2}.validate()), InvalidArgument);
    const ScalingParams p{0.25, 2, 1};
    p.validate();
    CHECK(p.sigma() == 1.0);
    CHECK(p.eps() == 0.25);
}
