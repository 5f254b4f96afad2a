#pragma once
// Coefficient models (A^{μν}, F, H) evaluated pointwise or in truncated-Taylor
// arithmetic in t, and the built-in model registry.

#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "transwave/grid.hpp"
#include "transwave/series.hpp"

namespace tw {

// State at one grid point. Index conventions: du[μ*m + I] = ∂_μ U^I with μ = 0 the
// time derivative; metric entries A[μ*(n+1) + ν].
struct ModelState {
    Series t;
    Point x{};
    std::size_t index = 0;
    int n = 1;
    int m = 1;
    std::span<const Series> u;
    std::span<const Series> du;
};

class CoefficientModel {
public:
    virtual ~CoefficientModel() = default;

    virtual std::string id() const = 0;
    virtual int components() const { return 1; }
    virtual double gamma() const = 0;
    virtual double kappa() const = 0;
    // A, F, H depend on (t, x) only.
    virtual bool linear() const { return false; }
    // Sources include a manufactured forcing, so F(0,0) = 0 is not expected.
    virtual bool forced() const { return false; }
    // A depends on ∂U as well as U (fully quasi-linear form).
    virtual bool gradient_metric() const { return false; }

    virtual void metric(const ModelState& st, std::span<Series> A) const = 0;
    // Closed-form solution (U, ∂_t U) at (t, x) for manufactured models.
    virtual bool has_exact() const { return false; }
    virtual std::pair<double, double> exact(double /*t*/, const Point& /*x*/, int /*n*/) const { return {0.0, 0.0}; }
    virtual void sources(const ModelState& st, std::span<Series> F, std::span<Series> H) const = 0;
};

using ModelPtr = std::shared_ptr<const CoefficientModel>;
using ModelParams = std::map<std::string, double>;

struct ModelInfo {
    std::string id;
    std::string description;
    ModelParams defaults;
};

std::vector<ModelInfo> list_models();
ModelPtr make_model(const std::string& id, const ModelParams& params = {});

// Time-independent linear model backed by grid fields (A^{μν}, F, H), e.g. rescaled data.
ModelPtr make_field_model(std::vector<GridFunction> metric, GridFunction F, GridFunction H, double gamma, double kappa);

// Projected model: A = m + φ_1 (A_raw − m), F = φ_1 F_raw, H = φ_1 H_raw with m = A_raw(0, 0).
// Points with φ_1 = 1 return the raw values unchanged (bit for bit).
ModelPtr make_projected_model(ModelPtr raw, const TorusGrid& grid);

// Checks (1/γ)|ξ|² ≤ A^{ij}ξ_iξ_j ≤ γ|ξ|² for 20 random ξ and A^{00} ≤ −κ on a batch
// of metric samples laid out as A[(μ*(n+1)+ν)*count + point].
void check_ellipticity(std::span<const double> A, std::size_t count, int n, double gamma, double kappa,
                       std::mt19937_64& rng, const std::string& where);

}  // namespace tw
