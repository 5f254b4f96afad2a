#pragma once

#include <cmath>

#include "transwave/grid.hpp"

namespace tw::test {

inline GridFunction standing(const TorusGrid& g, double k = 1.0) {
    const int a = g.normal_axis();
    return GridFunction::sample(g, [&](const Point& x) { return std::sin(k * M_PI * x[a]); });
}

inline double max_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::fabs(a.values()[i] - b.values()[i]));
    return m;
}

}  // namespace tw::test
