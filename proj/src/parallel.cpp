#include "transwave/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

#include "transwave/simd.hpp"

namespace tw::par {
namespace {

std::atomic<int> g_threads{1};

// Threads only pay off on large arrays; below this the loop runs inline.
constexpr std::size_t kParallelMin = 8 * kBlock;

}  // namespace

void set_threads(int count) {
    if (count < 1) throw std::invalid_argument("thread count must be >= 1");
    g_threads.store(count);
}

int threads() { return g_threads.load(); }

void for_blocks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    const int t = threads();
    if (t == 1 || n < kParallelMin) {
        for (std::size_t b = 0; b < blocks; ++b) fn(b * kBlock, std::min(n, (b + 1) * kBlock));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t b = next++; b < blocks; b = next++) fn(b * kBlock, std::min(n, (b + 1) * kBlock));
    };
    std::vector<std::jthread> pool;
    const int extra = std::min<int>(t, static_cast<int>(blocks)) - 1;
    for (int i = 0; i < extra; ++i) pool.emplace_back(worker);
    worker();
}

namespace {

double blocked_sum(std::size_t n, const std::function<double(std::size_t, std::size_t)>& partial) {
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> parts(blocks, 0.0);
    for_blocks(n, [&](std::size_t b, std::size_t e) { parts[b / kBlock] = partial(b, e); });
    double s = 0.0;
    for (double p : parts) s += p;
    return s;
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    const auto& k = simd::kernels();
    return blocked_sum(x.size(), [&](std::size_t b, std::size_t e) { return k.dot(x.data() + b, y.data() + b, e - b); });
}

double norm2_sq(std::span<const double> x) { return dot(x, x); }

double max_abs(std::span<const double> x) {
    const auto& k = simd::kernels();
    const std::size_t blocks = (x.size() + kBlock - 1) / kBlock;
    std::vector<double> parts(blocks, 0.0);
    for_blocks(x.size(), [&](std::size_t b, std::size_t e) { parts[b / kBlock] = k.max_abs(x.data() + b, e - b); });
    double m = 0.0;
    for (double p : parts) m = std::max(m, p);
    return m;
}

void axpby(double a, std::span<const double> x, double b, std::span<const double> y, std::span<double> out) {
    const auto& k = simd::kernels();
    for_blocks(out.size(), [&](std::size_t s, std::size_t e) { k.axpby(a, x.data() + s, b, y.data() + s, out.data() + s, e - s); });
}

void mul(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    const auto& k = simd::kernels();
    for_blocks(out.size(), [&](std::size_t s, std::size_t e) { k.mul(x.data() + s, y.data() + s, out.data() + s, e - s); });
}

}  // namespace tw::par
