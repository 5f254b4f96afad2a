#pragma once
// Periodic lattice on Q_1 = [-1,1]^n, the interface partition, cutoffs and
// first differences.
//
// Layout: row-major over axes, the last axis (x^n, the interface normal) fastest.
// Component planes are stored one after another.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tw {

using Point = std::array<double, 3>;

class TorusGrid {
public:
    TorusGrid(int n, int N);

    int dim() const { return n_; }
    int resolution() const { return N_; }
    double spacing() const { return h_; }
    std::size_t size() const { return size_; }
    int normal_axis() const { return n_ - 1; }

    // Index stride of an axis; outer/inner extents for the (outer, N, inner) view of it.
    std::size_t stride(int axis) const;
    std::size_t outer(int axis) const;

    double coord(int j) const { return -1.0 + j * h_; }
    std::array<int, 3> unravel(std::size_t p) const;
    std::size_t ravel(std::array<int, 3> idx) const;  // indices taken modulo N
    Point point(std::size_t p) const;
    int normal_index(std::size_t p) const { return static_cast<int>(p % static_cast<std::size_t>(N_)); }

    friend bool operator==(const TorusGrid& a, const TorusGrid& b) { return a.n_ == b.n_ && a.N_ == b.N_; }

private:
    int n_;
    int N_;
    double h_;
    std::size_t size_;
};

TorusGrid make_grid(int n, int N);

enum class Region { Omega, OmegaC, Interface };

Region region_of(const TorusGrid& g, std::size_t p);
Region region_of_normal_index(int N, int j);

class GridFunction {
public:
    explicit GridFunction(const TorusGrid& grid, int components = 1);
    GridFunction(const TorusGrid& grid, int components, std::vector<double> values);

    static GridFunction sample(const TorusGrid& grid, const std::function<double(const Point&)>& f);

    const TorusGrid& grid() const { return grid_; }
    int components() const { return m_; }
    std::size_t points() const { return grid_.size(); }
    std::span<const double> values() const { return values_; }
    std::span<const double> component(int c) const;
    double at(std::size_t p, int c = 0) const { return values_[static_cast<std::size_t>(c) * grid_.size() + p]; }

    GridFunction operator+(const GridFunction& o) const;
    GridFunction operator-(const GridFunction& o) const;
    GridFunction operator*(const GridFunction& o) const;  // pointwise; o may be scalar-valued
    GridFunction scaled(double a) const;
    GridFunction cyclic_shift(int axis, int k) const;

private:
    void require_same_grid(const GridFunction& o) const;

    TorusGrid grid_;
    int m_;
    std::vector<double> values_;
};

// χ_Ω: 1 on Ω, 0 on Ω^c, 1/2 on interface points.
GridFunction indicator(const TorusGrid& g);

// Shared cutoff profile: 1 for |τ| ≤ 1, 0 for |τ| ≥ 2, C^∞ monotone ramp between.
double cutoff_profile(double tau);
// φ_η(x) = Π_i φ(4 x^i / η).
double cutoff_phi_at(const Point& x, int n, double eta);
GridFunction cutoff_phi(const TorusGrid& g, double eta);

struct BumpSpec {
    Point x_plus{};   // centre in Ω
    Point x_minus{};  // centre in Ω^c
    double rho = 0.1;
};
void validate_bump(const BumpSpec& spec, int n);
double bump_psi_at(const Point& x, int n, const BumpSpec& spec);
GridFunction bump_psi(const TorusGrid& g, const BumpSpec& spec);
// Default ψ centred on the x^n axis at ±1/2, used across the suites.
BumpSpec standard_bump(int n);

// Periodic (torus) distance between points.
double torus_distance(const Point& a, const Point& b, int n);

enum class DiffScheme { centered, one_sided_into_Omega, one_sided_into_OmegaC };

// First difference along an axis. One-sided schemes return the derivative of the
// selected side on that side's closure (interface points included, stencils never
// cross an interface) and 0 on the opposite side; on tangential axes they are centered.
GridFunction diff(const GridFunction& f, int axis, DiffScheme scheme = DiffScheme::centered);

// Serialization: magic "TWGF", int32 n, N, m, then m component planes of float64.
void write_binary(std::ostream& os, const GridFunction& f);
GridFunction read_binary(std::istream& is);
void write_csv(std::ostream& os, const GridFunction& f);

}  // namespace tw
