#include <numeric>

#include <doctest.h>

#include "common.hpp"
#include "transwave/norms.hpp"
#include "transwave/smoothing.hpp"

using namespace tw;

TEST_CASE("mollifier kernel has unit mass") {
    for (int n : {1, 2}) {
        const TorusGrid g(n, 64);
        const auto k = mollifier_kernel(g, 0.1);
        const double mass = std::accumulate(k.weights.begin(), k.weights.end(), 0.0) * std::pow(g.spacing(), n);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("mollification converges on a smooth field") {
    const TorusGrid g(1, 256);
    const auto u = test::standing(g);
    double prev = 1e9;
    for (double lam : {0.2, 0.1, 0.05}) {
        const double err = lp_norm(mollify(u, lam) - u, NormRegion::Omega);
        CHECK(err < prev);
        prev = err;
    }
    // The interface limits the rate, so only a loose absolute bound.
    CHECK(prev < 5e-2);
}

TEST_CASE("zero extension vanishes off the region") {
    const TorusGrid g(1, 16);
    const auto one = GridFunction::sample(g, [](const Point&) { return 1.0; });
    const auto e = extend_zero(one);
    const auto chi = indicator(g);
    CHECK(test::max_diff(e, chi) == 0.0);
}
