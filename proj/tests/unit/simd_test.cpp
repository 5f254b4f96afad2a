#include <cstring>
#include <random>
#include <vector>

#include <doctest.h>

#include "common.hpp"
#include "transwave/parallel.hpp"
#include "transwave/simd.hpp"
#include "transwave/suites.hpp"
#include "transwave/timejets.hpp"
#include "transwave/waves.hpp"

using namespace tw;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar and AVX2 kernels agree bit for bit") {
    if (!simd::isa_available(simd::Isa::avx2)) {
        MESSAGE("AVX2 unavailable; skipped");
        return;
    }
    const auto& S = simd::scalar_kernels();
    const auto& V = simd::avx2_kernels();
    std::mt19937_64 rng(42);
    // Odd sizes exercise the remainder loops.
    for (std::size_t n : {1u, 3u, 7u, 64u, 1001u}) {
        const auto x = random_vec(n, rng), y = random_vec(n, rng), z = random_vec(n, rng), w = random_vec(n, rng);
        std::vector<double> a(n), b(n);
        S.axpby(0.3, x.data(), -1.7, y.data(), a.data(), n);
        V.axpby(0.3, x.data(), -1.7, y.data(), b.data(), n);
        CHECK(same_bits(a, b));
        S.mul(x.data(), y.data(), a.data(), n);
        V.mul(x.data(), y.data(), b.data(), n);
        CHECK(same_bits(a, b));
        const double ds = S.dot(x.data(), y.data(), n), dv = V.dot(x.data(), y.data(), n);
        CHECK(std::memcmp(&ds, &dv, sizeof ds) == 0);
        CHECK(S.max_abs(x.data(), n) == V.max_abs(x.data(), n));
        // a00 ≠ 0 denominators: shift away from zero.
        std::vector<double> aa(n);
        for (std::size_t i = 0; i < n; ++i) aa[i] = 1.5 + 0.5 * z[i];
        S.leapfrog(x.data(), aa.data(), w.data(), y.data(), z.data(), 100.0, 5.0, a.data(), n);
        V.leapfrog(x.data(), aa.data(), w.data(), y.data(), z.data(), 100.0, 5.0, b.data(), n);
        CHECK(same_bits(a, b));
    }
    for (auto [outer, N, inner] : {std::array<std::size_t, 3>{1, 16, 1}, {3, 8, 5}, {2, 12, 16}, {1, 10, 7}}) {
        const auto f = random_vec(outer * N * inner, rng);
        for (bool acc : {false, true}) {
            std::vector<double> a = random_vec(f.size(), rng), b = a;
            S.diff2(f.data(), a.data(), outer, N, inner, 0.7, acc);
            V.diff2(f.data(), b.data(), outer, N, inner, 0.7, acc);
            CHECK(same_bits(a, b));
            S.diff1(f.data(), a.data(), outer, N, inner, -0.3, acc);
            V.diff1(f.data(), b.data(), outer, N, inner, -0.3, acc);
            CHECK(same_bits(a, b));
        }
    }
}

TEST_CASE("a full solve is identical under either kernel set") {
    if (!simd::isa_available(simd::Isa::avx2)) return;
    const TorusGrid g(2, 32);
    LinearProblem pb;
    pb.model = make_model("variable", {{"h0", 0.5}});
    pb.data = compat_jets(test::standing(g), GridFunction(g), *pb.model, 2);
    pb.T = 0.5;
    const simd::Isa saved = simd::active_isa();
    simd::force_isa(simd::Isa::scalar);
    const auto a = solve_linear(pb);
    simd::force_isa(simd::Isa::avx2);
    const auto b = solve_linear(pb);
    simd::force_isa(saved);
    REQUIRE(a.traj.levels.size() == b.traj.levels.size());
    for (std::size_t k = 0; k < a.traj.levels.size(); ++k) CHECK(same_bits(a.traj.levels[k], b.traj.levels[k]));
}

TEST_CASE("results do not depend on the thread count") {
    const int saved = par::threads();
    par::set_threads(1);
    const auto one = determinism_payload();
    par::set_threads(4);
    const auto four = determinism_payload();
    par::set_threads(saved);
    CHECK(one == four);
}
