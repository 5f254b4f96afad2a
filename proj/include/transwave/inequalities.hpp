#pragma once
// Measured constants for the spatial calculus inequalities (Hölder, Morrey,
// interpolation, multiplication, Gagliardo–Nirenberg, Moser) and their
// intersection-space counterparts, over a frozen 1D test family.

#include <string>
#include <vector>

#include "transwave/csv.hpp"
#include "transwave/grid.hpp"

namespace tw {

enum class Inequality { holder, sobolev_embed, interpolation, multiplication, gagliardo_nirenberg, moser, elemE, fpropB };

struct InequalityRow {
    std::string inequality;
    std::string parameters;
    int N = 0;
    double max_ratio = 0.0;
};

std::vector<Inequality> all_inequalities();
std::string inequality_name(Inequality which);
Inequality parse_inequality(const std::string& name);

// Frozen test family on a 1D grid: trigonometric polynomials, piecewise polynomials, scaled bumps.
std::vector<GridFunction> inequality_corpus(const TorusGrid& g);

// One row per parameter set per resolution; ratio = LHS / RHS-without-constant, maximized over the family.
std::vector<InequalityRow> inequality_check(Inequality which, const std::vector<int>& resolutions = {32, 64, 128});

CsvTable inequality_table(const std::vector<InequalityRow>& rows);

}  // namespace tw
