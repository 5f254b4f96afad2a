#include <sstream>

#include <doctest.h>

#include "common.hpp"
#include "transwave/errors.hpp"

using namespace tw;

TEST_CASE("grid geometry and layout") {
    CHECK_THROWS_AS(TorusGrid(1, 7), OddResolution);
    const TorusGrid g(3, 8);
    CHECK(g.size() == 512);
    CHECK(g.spacing() == doctest::Approx(0.25));
    CHECK(g.normal_axis() == 2);
    CHECK(g.stride(2) == 1);  // normal axis is fastest
    const std::size_t p = g.ravel({1, 2, 3});
    CHECK(g.unravel(p) == std::array<int, 3>{1, 2, 3});
    CHECK(g.ravel({9, 10, 11}) == p);  // periodic wrap
    CHECK(g.point(p)[2] == doctest::Approx(-1.0 + 3 * 0.25));
}

TEST_CASE("indicator is one half on the interface") {
    const TorusGrid g(2, 16);
    const GridFunction chi = indicator(g);
    for (std::size_t p = 0; p < g.size(); ++p) {
        const Region r = region_of(g, p);
        const double want = r == Region::Interface ? 0.5 : (r == Region::Omega ? 1.0 : 0.0);
        CHECK(chi.at(p) == want);
    }
}

TEST_CASE("cutoff profile is a monotone plateau ramp") {
    CHECK(cutoff_profile(0.0) == 1.0);
    CHECK(cutoff_profile(1.0) == 1.0);
    CHECK(cutoff_profile(-2.0) == 0.0);
    CHECK(cutoff_profile(3.0) == 0.0);
    double prev = 1.0;
    for (double t = 1.0; t <= 2.0; t += 0.01) {
        const double v = cutoff_profile(t);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("centered difference is second order") {
    double prev = 0.0;
    for (int N : {32, 64, 128}) {
        const TorusGrid g(1, N);
        const auto d = diff(test::standing(g), 0);
        const auto exact = GridFunction::sample(g, [](const Point& x) { return M_PI * std::cos(M_PI * x[0]); });
        const double err = test::max_diff(d, exact);
        if (prev > 0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.05));
        prev = err;
    }
}

TEST_CASE("binary round trip") {
    const TorusGrid g(2, 8);
    const auto f = test::standing(g);
    std::stringstream ss;
    write_binary(ss, f);
    const GridFunction r = read_binary(ss);
    CHECK(r.grid() == g);
    CHECK(test::max_diff(r, f) == 0.0);
}
