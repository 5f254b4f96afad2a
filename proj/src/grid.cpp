#include "transwave/grid.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "transwave/errors.hpp"
#include "transwave/simd.hpp"

namespace tw {

TorusGrid::TorusGrid(int n, int N) : n_(n), N_(N), h_(2.0 / N), size_(1) {
    if (n < 1 || n > 3) throw InvalidArgument(fmt::format("grid dimension {} outside 1..3", n));
    if (N % 2 != 0) throw OddResolution(fmt::format("resolution {} is odd; the interface must lie on grid points", N));
    if (N < 8) throw InvalidArgument(fmt::format("resolution {} below the minimum of 8", N));
    for (int i = 0; i < n; ++i) size_ *= static_cast<std::size_t>(N);
}

std::size_t TorusGrid::stride(int axis) const {
    std::size_t s = 1;
    for (int a = axis + 1; a < n_; ++a) s *= static_cast<std::size_t>(N_);
    return s;
}

std::size_t TorusGrid::outer(int axis) const {
    std::size_t s = 1;
    for (int a = 0; a < axis; ++a) s *= static_cast<std::size_t>(N_);
    return s;
}

std::array<int, 3> TorusGrid::unravel(std::size_t p) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = n_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(p % static_cast<std::size_t>(N_));
        p /= static_cast<std::size_t>(N_);
    }
    return idx;
}

std::size_t TorusGrid::ravel(std::array<int, 3> idx) const {
    std::size_t p = 0;
    for (int a = 0; a < n_; ++a) {
        const int j = ((idx[a] % N_) + N_) % N_;
        p = p * static_cast<std::size_t>(N_) + static_cast<std::size_t>(j);
    }
    return p;
}

Point TorusGrid::point(std::size_t p) const {
    const auto idx = unravel(p);
    Point x{0.0, 0.0, 0.0};
    for (int a = 0; a < n_; ++a) x[a] = coord(idx[a]);
    return x;
}

TorusGrid make_grid(int n, int N) { return TorusGrid(n, N); }

Region region_of_normal_index(int N, int j) {
    if (j == 0 || j == N / 2) return Region::Interface;
    return j > N / 2 ? Region::Omega : Region::OmegaC;
}

Region region_of(const TorusGrid& g, std::size_t p) { return region_of_normal_index(g.resolution(), g.normal_index(p)); }

GridFunction::GridFunction(const TorusGrid& grid, int components)
    : grid_(grid), m_(components), values_(grid.size() * static_cast<std::size_t>(components), 0.0) {
    if (components < 1) throw InvalidArgument("component count must be >= 1");
}

GridFunction::GridFunction(const TorusGrid& grid, int components, std::vector<double> values)
    : grid_(grid), m_(components), values_(std::move(values)) {
    if (components < 1) throw InvalidArgument("component count must be >= 1");
    if (values_.size() != grid.size() * static_cast<std::size_t>(components))
        throw InvalidArgument(fmt::format("value count {} does not match grid size {} x {} components",
                                          values_.size(), grid.size(), components));
}

GridFunction GridFunction::sample(const TorusGrid& grid, const std::function<double(const Point&)>& f) {
    std::vector<double> v(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) v[p] = f(grid.point(p));
    return GridFunction(grid, 1, std::move(v));
}

std::span<const double> GridFunction::component(int c) const {
    return std::span<const double>(values_).subspan(static_cast<std::size_t>(c) * grid_.size(), grid_.size());
}

void GridFunction::require_same_grid(const GridFunction& o) const {
    if (!(grid_ == o.grid_)) throw InvalidArgument("grid functions live on different grids");
}

GridFunction GridFunction::operator+(const GridFunction& o) const {
    require_same_grid(o);
    if (m_ != o.m_) throw InvalidArgument("component count mismatch");
    std::vector<double> v(values_.size());
    simd::kernels().axpby(1.0, values_.data(), 1.0, o.values_.data(), v.data(), v.size());
    return GridFunction(grid_, m_, std::move(v));
}

GridFunction GridFunction::operator-(const GridFunction& o) const {
    require_same_grid(o);
    if (m_ != o.m_) throw InvalidArgument("component count mismatch");
    std::vector<double> v(values_.size());
    simd::kernels().axpby(1.0, values_.data(), -1.0, o.values_.data(), v.data(), v.size());
    return GridFunction(grid_, m_, std::move(v));
}

GridFunction GridFunction::operator*(const GridFunction& o) const {
    require_same_grid(o);
    if (o.m_ != 1 && o.m_ != m_) throw InvalidArgument("component count mismatch");
    std::vector<double> v(values_.size());
    const std::size_t P = grid_.size();
    for (int c = 0; c < m_; ++c) {
        const double* b = o.values_.data() + (o.m_ == 1 ? 0 : c * P);
        simd::kernels().mul(values_.data() + c * P, b, v.data() + c * P, P);
    }
    return GridFunction(grid_, m_, std::move(v));
}

GridFunction GridFunction::scaled(double a) const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * values_[i];
    return GridFunction(grid_, m_, std::move(v));
}

GridFunction GridFunction::cyclic_shift(int axis, int k) const {
    std::vector<double> v(values_.size());
    const std::size_t P = grid_.size();
    for (std::size_t p = 0; p < P; ++p) {
        auto idx = grid_.unravel(p);
        idx[axis] += k;
        const std::size_t q = grid_.ravel(idx);
        for (int c = 0; c < m_; ++c) v[c * P + q] = values_[c * P + p];
    }
    return GridFunction(grid_, m_, std::move(v));
}

GridFunction indicator(const TorusGrid& g) {
    std::vector<double> v(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) {
        switch (region_of(g, p)) {
            case Region::Omega: v[p] = 1.0; break;
            case Region::OmegaC: v[p] = 0.0; break;
            case Region::Interface: v[p] = 0.5; break;
        }
    }
    return GridFunction(g, 1, std::move(v));
}

double cutoff_profile(double tau) {
    const double a = std::fabs(tau);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double s = a - 1.0;
    const double up = std::exp(-1.0 / (1.0 - s));
    const double down = std::exp(-1.0 / s);
    return up / (up + down);
}

double cutoff_phi_at(const Point& x, int n, double eta) {
    double v = 1.0;
    for (int i = 0; i < n; ++i) v *= cutoff_profile(4.0 * x[i] / eta);
    return v;
}

GridFunction cutoff_phi(const TorusGrid& g, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument(fmt::format("cutoff width {} outside (0,1]", eta));
    return GridFunction::sample(g, [&](const Point& x) { return cutoff_phi_at(x, g.dim(), eta); });
}

double torus_distance(const Point& a, const Point& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        d = std::fmod(d, 2.0);
        d = std::min(d, 2.0 - d);
        s += d * d;
    }
    return std::sqrt(s);
}

void validate_bump(const BumpSpec& spec, int n) {
    const int k = n - 1;
    const double r3 = 3.0 * spec.rho;
    if (!(spec.rho > 0.0)) throw InvalidArgument("bump radius must be positive");
    if (!(spec.x_plus[k] - r3 > 0.0 && spec.x_plus[k] + r3 < 1.0))
        throw InvalidArgument("B_{3rho}(x_plus) does not fit inside the half-box 0 < x^n < 1");
    if (!(spec.x_minus[k] - r3 > -1.0 && spec.x_minus[k] + r3 < 0.0))
        throw InvalidArgument("B_{3rho}(x_minus) does not fit inside the half-box -1 < x^n < 0");
}

double bump_psi_at(const Point& x, int n, const BumpSpec& spec) {
    return cutoff_profile(torus_distance(x, spec.x_plus, n) / spec.rho) +
           cutoff_profile(torus_distance(x, spec.x_minus, n) / spec.rho);
}

GridFunction bump_psi(const TorusGrid& g, const BumpSpec& spec) {
    validate_bump(spec, g.dim());
    return GridFunction::sample(g, [&](const Point& x) { return bump_psi_at(x, g.dim(), spec); });
}

BumpSpec standard_bump(int n) {
    BumpSpec b;
    b.x_plus[n - 1] = 0.5;
    b.x_minus[n - 1] = -0.5;
    b.rho = 0.1;
    return b;
}

namespace {

// Derivative of the side segment at normal index j, or nullopt-like flag if j is off the side.
bool side_segment_position(int N, int j, bool omega, int& q) {
    const int half = N / 2;
    if (omega) {
        if (j == 0) { q = half; return true; }
        if (j >= half) { q = j - half; return true; }
        return false;
    }
    if (j <= half) { q = j; return true; }
    return false;
}

}  // namespace

GridFunction diff(const GridFunction& f, int axis, DiffScheme scheme) {
    const TorusGrid& g = f.grid();
    if (axis < 0 || axis >= g.dim()) throw InvalidArgument(fmt::format("axis {} out of range", axis));
    const std::size_t P = g.size();
    const int N = g.resolution();
    const double h = g.spacing();
    std::vector<double> out(f.values().size(), 0.0);
    const auto& k = simd::kernels();
    if (scheme == DiffScheme::centered || axis != g.normal_axis()) {
        for (int c = 0; c < f.components(); ++c)
            k.diff1(f.values().data() + c * P, out.data() + c * P, g.outer(axis), static_cast<std::size_t>(N),
                    g.stride(axis), 0.5 / h, false);
        return GridFunction(g, f.components(), std::move(out));
    }
    const bool omega = scheme == DiffScheme::one_sided_into_Omega;
    const int half = N / 2;
    const int L = half + 1;
    const int offset = omega ? half : 0;
    for (int c = 0; c < f.components(); ++c) {
        const double* src = f.values().data() + c * P;
        double* dst = out.data() + c * P;
        for (std::size_t line = 0; line < P / N; ++line) {
            const double* row = src + line * N;
            auto val = [&](int q) { return row[(q + offset) % N]; };
            for (int j = 0; j < N; ++j) {
                int q;
                if (!side_segment_position(N, j, omega, q)) continue;
                double d;
                if (q == 0)
                    d = (-3.0 * val(0) + 4.0 * val(1) - val(2)) / (2.0 * h);
                else if (q == L - 1)
                    d = (3.0 * val(L - 1) - 4.0 * val(L - 2) + val(L - 3)) / (2.0 * h);
                else
                    d = (val(q + 1) - val(q - 1)) / (2.0 * h);
                dst[line * N + j] = d;
            }
        }
    }
    return GridFunction(g, f.components(), std::move(out));
}

void write_binary(std::ostream& os, const GridFunction& f) {
    const char magic[4] = {'T', 'W', 'G', 'F'};
    os.write(magic, 4);
    const std::int32_t hdr[3] = {f.grid().dim(), f.grid().resolution(), f.components()};
    os.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
    os.write(reinterpret_cast<const char*>(f.values().data()),
             static_cast<std::streamsize>(f.values().size() * sizeof(double)));
}

GridFunction read_binary(std::istream& is) {
    char magic[4];
    std::int32_t hdr[3];
    if (!is.read(magic, 4) || std::memcmp(magic, "TWGF", 4) != 0) throw InvalidArgument("not a grid function blob");
    if (!is.read(reinterpret_cast<char*>(hdr), sizeof hdr)) throw InvalidArgument("truncated grid function header");
    const TorusGrid g(hdr[0], hdr[1]);
    std::vector<double> v(g.size() * static_cast<std::size_t>(hdr[2]));
    if (!is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double))))
        throw InvalidArgument("truncated grid function data");
    return GridFunction(g, hdr[2], std::move(v));
}

void write_csv(std::ostream& os, const GridFunction& f) {
    const TorusGrid& g = f.grid();
    for (int a = 0; a < g.dim(); ++a) os << (a ? "," : "") << "x" << a + 1;
    for (int c = 0; c < f.components(); ++c) os << ",u" << c;
    os << "\n";
    for (std::size_t p = 0; p < g.size(); ++p) {
        const Point x = g.point(p);
        for (int a = 0; a < g.dim(); ++a) os << (a ? "," : "") << fmt::format("{:.17g}", x[a]);
        for (int c = 0; c < f.components(); ++c) os << fmt::format(",{:.17g}", f.at(p, c));
        os << "\n";
    }
}

}  // namespace tw
