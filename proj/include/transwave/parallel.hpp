#pragma once
// Deterministic data-parallel helpers over flat arrays.
//
// Work is cut into fixed-size blocks independent of the thread count; reductions
// combine block partials in block order, so results are bitwise identical for any
// number of threads.

#include <cstddef>
#include <functional>
#include <span>

namespace tw::par {

inline constexpr std::size_t kBlock = 4096;

void set_threads(int count);
int threads();

// Calls fn(begin, end) for consecutive blocks of [0, n).
void for_blocks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

double dot(std::span<const double> x, std::span<const double> y);
double norm2_sq(std::span<const double> x);
double max_abs(std::span<const double> x);
void axpby(double a, std::span<const double> x, double b, std::span<const double> y, std::span<double> out);
void mul(std::span<const double> x, std::span<const double> y, std::span<double> out);

}  // namespace tw::par
