#include <Eigen/Dense>
#include <doctest.h>

#include "common.hpp"
#include "transwave/errors.hpp"
#include "transwave/quasilinear.hpp"
#include "transwave/timejets.hpp"

using namespace tw;

namespace {

QuasilinearProblem problem(const std::string& model, double amp) {
    const TorusGrid g(1, 64);
    QuasilinearProblem pb;
    pb.model = make_model(model);
    const auto u0 = GridFunction::sample(g, [&](const Point& x) { return amp * std::cos(M_PI * x[0]); });
    const auto u1 = GridFunction::sample(g, [&](const Point& x) { return amp * std::sin(M_PI * x[0]); });
    pb.data = compat_jets(u0, u1, *pb.model, 3);
    pb.T = 0.5;
    return pb;
}

}  // namespace

TEST_CASE("a linear model is its own Picard fixed point") {
    const auto res = solve_quasilinear(problem("flat", 0.1));
    CHECK(res.iterations == 1);
    CHECK(res.ratios.empty());
}

TEST_CASE("quasilinear Picard contracts inside the ball") {
    const auto res = solve_quasilinear(problem("quasilinear", 0.1));
    CHECK(res.iterations >= 2);
    for (double r : res.ratios) CHECK(r <= 0.5);
    for (const auto& s : res.history)
        if (s.T == res.T) CHECK(s.high_norm <= s.R);
}

TEST_CASE("differently seeded solves agree") {
    auto pb = problem("quasilinear", 0.1);
    const auto u = uniqueness_probe(pb, 0, 7);
    CHECK(u.max_distance <= 10 * u.tol);
}

TEST_CASE("comparison matrix at delta zero has unit determinant") {
    for (int s : {2, 3, 4}) {
        const auto M = comparison_matrix(s, 0.0, 3.0);
        const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(M.data(), s, s);
        CHECK(m.determinant() == doctest::Approx(1.0));
        CHECK(smallest_singular_value(M, s) > 0.0);
    }
}

TEST_CASE("continuation separates small data from gradient blow-up") {
    const auto small = problem("quasilinear", 0.1);
    const auto rs = evolve_and_monitor(small.model, small.data, 1.0, 0.01, {});
    CHECK(rs.verdict == Verdict::Continuable);

    const TorusGrid g(1, 64);
    const auto model = make_model("riccati");
    const auto u1 = GridFunction::sample(g, [](const Point& x) { return 4 * std::cos(M_PI * x[0]); });
    const Jet data = compat_jets(GridFunction(g), u1, *model, 3);
    const auto rb = evolve_and_monitor(model, data, 2.0, 0.01, {});
    CHECK(rb.verdict == Verdict::BlowupSuspected);
    CHECK(rb.t_stop < 2.0);
}
