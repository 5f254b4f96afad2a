#include <doctest.h>

#include "common.hpp"
#include "transwave/jet.hpp"
#include "transwave/norms.hpp"

using namespace tw;

TEST_CASE("L2 of a constant matches the measure") {
    const TorusGrid g(2, 32);
    const auto one = GridFunction::sample(g, [](const Point&) { return 1.0; });
    CHECK(lp_norm(one, NormRegion::Torus) == doctest::Approx(2.0));  // sqrt(4)
    const double o = lp_norm(one, NormRegion::Omega), c = lp_norm(one, NormRegion::OmegaC);
    CHECK(o == doctest::Approx(std::sqrt(2.0)));
    CHECK(o * o + c * c == doctest::Approx(4.0));
}

TEST_CASE("H1 of a standing wave") {
    const TorusGrid g(1, 256);
    const auto u = test::standing(g);
    CHECK(sobolev_norm(u, 1, NormRegion::Torus).value == doctest::Approx(std::sqrt(1 + M_PI * M_PI)).epsilon(1e-3));
    CHECK(sobolev_seminorm(u, 1, NormRegion::Torus) == doctest::Approx(M_PI).epsilon(1e-3));
}

TEST_CASE("intersection norm dominates its torus part") {
    const TorusGrid g(1, 64);
    const auto u = test::standing(g);
    const double full = intersect_norm(u, 1, 2).value;
    CHECK(full >= sobolev_norm(u, 1, NormRegion::Torus).value);
    CHECK(full >= sobolev_norm(u, 2, NormRegion::Omega).value);
}

TEST_CASE("energy norm of a jet weighs lower entries more") {
    const TorusGrid g(1, 64);
    const auto u = test::standing(g);
    const Jet j({u, u.scaled(0.0), u.scaled(-M_PI * M_PI)});
    const auto r = energy_norm(j, {NormFamily::E_s, 0, 2, 0, NormRegion::Torus});
    CHECK(r.value > 0.0);
    CHECK(r.contributions.size() == 3);
    CHECK(r.contributions[1] == 0.0);
    const double base = energy_norm(j, {NormFamily::E_base, 0, 1, 0, NormRegion::Torus}).value;
    CHECK(base == doctest::Approx(std::sqrt(1 + M_PI * M_PI)).epsilon(1e-2));
}
