#include "transwave/model.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "transwave/errors.hpp"

namespace tw {
namespace {

constexpr double kPi = std::numbers::pi;

double param(const ModelParams& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void check_params(const std::string& id, const ModelParams& given, const ModelParams& defaults) {
    for (const auto& [k, v] : given)
        if (!defaults.count(k)) throw InvalidArgument(fmt::format("model '{}' has no parameter '{}'", id, k));
}

void set_diag_metric(const ModelState& st, std::span<Series> A, const Series& a00, const Series& aii) {
    const int d = st.n + 1;
    for (auto& e : A) e = Series(0.0);
    A[0] = a00;
    for (int i = 1; i <= st.n; ++i) A[i * d + i] = aii;
}

// Tensor factor used by manufactured solutions: c(x) = cos(2πx^n) Π_{i<n} cos(πx^i).
struct Profile {
    double c, cn, lap;  // value, ∂_n c, Δc
    std::array<double, 3> grad{};
};

Profile profile(const Point& x, int n) {
    double tang = 1.0;
    for (int i = 0; i < n - 1; ++i) tang *= std::cos(kPi * x[i]);
    const double y = x[n - 1];
    Profile p;
    p.c = std::cos(2 * kPi * y) * tang;
    p.cn = -2 * kPi * std::sin(2 * kPi * y) * tang;
    p.lap = -(4 * kPi * kPi + (n - 1) * kPi * kPi) * p.c;
    for (int i = 0; i < n - 1; ++i) {
        double t = 1.0;
        for (int j = 0; j < n - 1; ++j) t *= (j == i) ? -kPi * std::sin(kPi * x[j]) : std::cos(kPi * x[j]);
        p.grad[i] = std::cos(2 * kPi * y) * t;
    }
    p.grad[n - 1] = p.cn;
    return p;
}

class FlatModel : public CoefficientModel {
public:
    explicit FlatModel(const ModelParams& p) : h0_(param(p, "h0", 0.0)), f0_(param(p, "f0", 0.0)) {}
    std::string id() const override { return "flat"; }
    double gamma() const override { return 1.0; }
    double kappa() const override { return 1.0; }
    bool linear() const override { return true; }
    bool forced() const override { return f0_ != 0.0; }
    void metric(const ModelState& st, std::span<Series> A) const override {
        set_diag_metric(st, A, Series(-1.0), Series(1.0));
    }
    void sources(const ModelState& st, std::span<Series> F, std::span<Series> H) const override {
        F[0] = Series(f0_ * std::cos(kPi * st.x[st.n - 1]));
        H[0] = Series(h0_);
    }

private:
    double h0_, f0_;
};

// A^{00} = -1, A^{ij} = δ^{ij} a(t, x^n), A^{0n} = b(x^n).
class VariableModel : public CoefficientModel {
public:
    explicit VariableModel(const ModelParams& p)
        : amp_(param(p, "amp", 0.4)), mix_(param(p, "mix", 0.1)), omega_(param(p, "omega", 1.0)),
          f0_(param(p, "f0", 0.0)), h0_(param(p, "h0", 0.0)) {}
    std::string id() const override { return "variable"; }
    double gamma() const override { return 2.0; }
    double kappa() const override { return 1.0; }
    bool linear() const override { return true; }
    bool forced() const override { return f0_ != 0.0; }

    Series a(const Series& t, double y) const { return Series(1.5) + Series(amp_ * std::sin(kPi * y)) * cos(t * Series(omega_)); }
    double b(double y) const { return mix_ * std::sin(kPi * y); }

    void metric(const ModelState& st, std::span<Series> A) const override {
        const double y = st.x[st.n - 1];
        set_diag_metric(st, A, Series(-1.0), a(st.t, y));
        const int d = st.n + 1;
        A[st.n] = Series(b(y));
        A[st.n * d] = Series(b(y));
    }
    void sources(const ModelState& st, std::span<Series> F, std::span<Series> H) const override {
        F[0] = Series(f0_ * std::cos(kPi * st.x[st.n - 1]));
        H[0] = Series(h0_);
    }

protected:
    double amp_, mix_, omega_, f0_, h0_;
};

// Variable metric with forcing chosen so that U* = sin(t + phase) c(x) solves the equation exactly.
class ManufacturedModel : public VariableModel {
public:
    explicit ManufacturedModel(const ModelParams& p) : VariableModel(p), phase_(param(p, "phase", 1.0)) {}
    std::string id() const override { return "manufactured"; }
    bool forced() const override { return true; }
    bool has_exact() const override { return true; }
    std::pair<double, double> exact(double t, const Point& x, int n) const override {
        const double c = profile(x, n).c;
        return {std::sin(t + phase_) * c, std::cos(t + phase_) * c};
    }
    void sources(const ModelState& st, std::span<Series> F, std::span<Series> H) const override {
        const double y = st.x[st.n - 1];
        const Profile pr = profile(st.x, st.n);
        const Series S = sin(st.t + Series(phase_)), C = cos(st.t + Series(phase_));
        const Series av = a(st.t, y);
        const Series an = Series(amp_ * kPi * std::cos(kPi * y)) * cos(st.t * Series(omega_));
        const double bv = b(y), bn = mix_ * kPi * std::cos(kPi * y);
        // -U_tt + 2 b U_tn + b_n U_t + a_n U_n + a ΔU
        F[0] = S * Series(pr.c) + C * Series(2 * bv * pr.cn + bn * pr.c) + an * S * Series(pr.cn) +
               av * S * Series(pr.lap);
        H[0] = Series(0.0);
    }

private:
    double phase_;
};

// A^{00} = -1, A^{ij} = δ^{ij}(1 + βU²), F = 0, H = h0 + η U.
class QuasilinearModel : public CoefficientModel {
public:
    explicit QuasilinearModel(const ModelParams& p)
        : beta_(param(p, "beta", 1.0)), h0_(param(p, "h0", 0.5)), eta_(param(p, "eta", 0.0)) {}
    std::string id() const override { return "quasilinear"; }
    double gamma() const override { return 2.0; }
    double kappa() const override { return 1.0; }
    void metric(const ModelState& st, std::span<Series> A) const override {
        set_diag_metric(st, A, Series(-1.0), Series(1.0) + Series(beta_) * square(st.u[0]));
    }
    void sources(const ModelState& st, std::span<Series> F, std::span<Series> H) const override {
        F[0] = Series(0.0);
        H[0] = Series(h0_) + Series(eta_) * st.u[0];
    }

private:
    double beta_, h0_, eta_;
};

// Flat metric with F = -a (∂_t U)²: the time derivative blows up along each point.
class RiccatiModel : public CoefficientModel {
public:
    explicit RiccatiModel(const ModelParams& p) : a_(param(p, "a", 1.0)) {}
    std::string id() const override { return "riccati"; }
    double gamma() const override { return 1.0; }
    double kappa() const override { return 1.0; }
    void metric(const ModelState& st, std::span<Series> A) const override {
        set_diag_metric(st, A, Series(-1.0), Series(1.0));
    }
    void sources(const ModelState& st, std::span<Series> F, std::span<Series> H) const override {
        F[0] = Series(-a_) * square(st.du[0]);
        H[0] = Series(0.0);
    }

private:
    double a_;
};

// Quasilinear metric with forcing so that U* = amp cos(t) c(x) is exact.
class ManufacturedQuasilinearModel : public CoefficientModel {
public:
    explicit ManufacturedQuasilinearModel(const ModelParams& p)
        : beta_(param(p, "beta", 1.0)), amp_(param(p, "amp", 0.1)) {}
    std::string id() const override { return "manufactured_quasilinear"; }
    double gamma() const override { return 2.0; }
    double kappa() const override { return 1.0; }
    bool forced() const override { return true; }
    bool has_exact() const override { return true; }
    std::pair<double, double> exact(double t, const Point& x, int n) const override {
        const double c = profile(x, n).c;
        return {amp_ * std::cos(t) * c, -amp_ * std::sin(t) * c};
    }
    void metric(const ModelState& st, std::span<Series> A) const override {
        set_diag_metric(st, A, Series(-1.0), Series(1.0) + Series(beta_) * square(st.u[0]));
    }
    void sources(const ModelState& st, std::span<Series> F, std::span<Series> H) const override {
        const Profile pr = profile(st.x, st.n);
        const Series U = Series(amp_ * pr.c) * cos(st.t);
        double g2 = 0.0;
        for (int i = 0; i < st.n; ++i) g2 += pr.grad[i] * pr.grad[i];
        // -U_tt + (1 + βU²)ΔU + 2βU|∇U|², with U_tt = -U.
        const Series lapU = Series(amp_ * pr.lap) * cos(st.t);
        const Series grad2 = Series(amp_ * amp_ * g2) * square(cos(st.t));
        F[0] = U + (Series(1.0) + Series(beta_) * square(U)) * lapU + Series(2 * beta_) * U * grad2;
        H[0] = Series(0.0);
    }

private:
    double beta_, amp_;
};

// Fully quasi-linear variant: A^{ij} = δ^{ij}(1 + β|∇U|²), A^{0ν} constant.
class GradientModel : public CoefficientModel {
public:
    explicit GradientModel(const ModelParams& p) : beta_(param(p, "beta", 0.5)), h0_(param(p, "h0", 0.0)) {}
    std::string id() const override { return "gradient"; }
    double gamma() const override { return 2.0; }
    double kappa() const override { return 1.0; }
    bool gradient_metric() const override { return true; }
    void metric(const ModelState& st, std::span<Series> A) const override {
        Series g(0.0);
        for (int i = 1; i <= st.n; ++i) g += square(st.du[i * st.m]);
        set_diag_metric(st, A, Series(-1.0), Series(1.0) + Series(beta_) * g);
    }
    void sources(const ModelState&, std::span<Series> F, std::span<Series> H) const override {
        F[0] = Series(0.0);
        H[0] = Series(h0_);
    }

private:
    double beta_, h0_;
};

class FieldModel : public CoefficientModel {
public:
    FieldModel(std::vector<GridFunction> metric, GridFunction F, GridFunction H, double gamma, double kappa)
        : metric_(std::move(metric)), F_(std::move(F)), H_(std::move(H)), gamma_(gamma), kappa_(kappa) {}
    std::string id() const override { return "field"; }
    double gamma() const override { return gamma_; }
    double kappa() const override { return kappa_; }
    bool linear() const override { return true; }
    bool forced() const override { return true; }
    void metric(const ModelState& st, std::span<Series> A) const override {
        for (std::size_t k = 0; k < metric_.size(); ++k) A[k] = Series(metric_[k].at(st.index));
    }
    void sources(const ModelState& st, std::span<Series> F, std::span<Series> H) const override {
        F[0] = Series(F_.at(st.index));
        H[0] = Series(H_.at(st.index));
    }

private:
    std::vector<GridFunction> metric_;
    GridFunction F_, H_;
    double gamma_, kappa_;
};

class ProjectedModel : public CoefficientModel {
public:
    ProjectedModel(ModelPtr raw, const TorusGrid& g) : raw_(std::move(raw)), n_(g.dim()) {
        if (!raw_->linear()) throw InvalidArgument("projection needs a linear raw model");
        const int d = n_ + 1;
        std::vector<Series> u(1, Series(0.0)), du(static_cast<std::size_t>(d), Series(0.0));
        ModelState st;
        st.t = Series(0.0);
        st.n = n_;
        st.u = u;
        st.du = du;
        st.index = g.ravel({g.resolution() / 2, g.resolution() / 2, g.resolution() / 2});
        std::vector<Series> A(static_cast<std::size_t>(d * d));
        raw_->metric(st, A);
        for (const auto& a : A) m_.push_back(a.value());
    }
    std::string id() const override { return "projected:" + raw_->id(); }
    double gamma() const override { return raw_->gamma(); }
    double kappa() const override { return raw_->kappa(); }
    bool linear() const override { return true; }
    bool forced() const override { return raw_->forced(); }
    void metric(const ModelState& st, std::span<Series> A) const override {
        raw_->metric(st, A);
        const double phi = cutoff_phi_at(st.x, n_, 1.0);
        if (phi == 1.0) return;
        for (std::size_t k = 0; k < A.size(); ++k) A[k] = Series(m_[k]) + Series(phi) * (A[k] - Series(m_[k]));
    }
    void sources(const ModelState& st, std::span<Series> F, std::span<Series> H) const override {
        raw_->sources(st, F, H);
        const double phi = cutoff_phi_at(st.x, n_, 1.0);
        if (phi == 1.0) return;
        for (auto& f : F) f = Series(phi) * f;
        for (auto& h : H) h = Series(phi) * h;
    }

private:
    ModelPtr raw_;
    int n_;
    std::vector<double> m_;
};

}  // namespace

std::vector<ModelInfo> list_models() {
    return {
        {"flat", "A = diag(-1, 1, ..., 1); F = f0 cos(pi x^n); H = h0 (constant jump source)", {{"h0", 0.0}, {"f0", 0.0}}},
        {"variable", "A^{ij} = (1.5 + amp sin(pi x^n) cos(omega t)) delta^{ij}, A^{0n} = mix sin(pi x^n); linear",
         {{"amp", 0.4}, {"mix", 0.1}, {"omega", 1.0}, {"f0", 0.0}, {"h0", 0.0}}},
        {"manufactured", "variable metric with forcing making U* = sin(t + phase) c(x) exact",
         {{"amp", 0.4}, {"mix", 0.1}, {"omega", 1.0}, {"phase", 1.0}}},
        {"quasilinear", "A^{ij} = (1 + beta U^2) delta^{ij}; F = 0; H = h0 + eta U", {{"beta", 1.0}, {"h0", 0.5}, {"eta", 0.0}}},
        {"riccati", "flat metric, F = -a (dU/dt)^2 (gradient blow-up in finite time)", {{"a", 1.0}}},
        {"manufactured_quasilinear", "quasilinear metric with forcing making U* = amp cos(t) c(x) exact", {{"beta", 1.0}, {"amp", 0.1}}},
        {"gradient", "fully quasi-linear A^{ij} = (1 + beta |grad U|^2) delta^{ij}; needs s + 1", {{"beta", 0.5}, {"h0", 0.0}}},
    };
}

ModelPtr make_model(const std::string& id, const ModelParams& params) {
    for (const auto& info : list_models()) {
        if (info.id != id) continue;
        check_params(id, params, info.defaults);
        if (id == "flat") return std::make_shared<FlatModel>(params);
        if (id == "variable") return std::make_shared<VariableModel>(params);
        if (id == "manufactured") return std::make_shared<ManufacturedModel>(params);
        if (id == "quasilinear") return std::make_shared<QuasilinearModel>(params);
        if (id == "riccati") return std::make_shared<RiccatiModel>(params);
        if (id == "manufactured_quasilinear") return std::make_shared<ManufacturedQuasilinearModel>(params);
        if (id == "gradient") return std::make_shared<GradientModel>(params);
    }
    throw InvalidArgument("unknown model '" + id + "'");
}

ModelPtr make_field_model(std::vector<GridFunction> metric, GridFunction F, GridFunction H, double gamma, double kappa) {
    const int d = F.grid().dim() + 1;
    if (static_cast<int>(metric.size()) != d * d) throw InvalidArgument("field model needs (n+1)^2 metric fields");
    return std::make_shared<FieldModel>(std::move(metric), std::move(F), std::move(H), gamma, kappa);
}

ModelPtr make_projected_model(ModelPtr raw, const TorusGrid& grid) {
    return std::make_shared<ProjectedModel>(std::move(raw), grid);
}

void check_ellipticity(std::span<const double> A, std::size_t count, int n, double gamma, double kappa,
                       std::mt19937_64& rng, const std::string& where) {
    const int d = n + 1;
    constexpr double slack = 1e-12;
    std::normal_distribution<double> normal;
    std::vector<std::array<double, 3>> xi(20);
    for (auto& v : xi)
        for (int i = 0; i < n; ++i) v[i] = normal(rng);
    for (std::size_t p = 0; p < count; ++p) {
        const double a00 = A[0 * count + p];
        if (!(a00 <= -kappa * (1.0 - slack)))
            throw EllipticityViolation(fmt::format("{}: A^00 = {} exceeds -kappa = {} at point {}", where, a00, -kappa, p));
        for (const auto& v : xi) {
            double q = 0.0, nn = 0.0;
            for (int i = 0; i < n; ++i) {
                nn += v[i] * v[i];
                for (int j = 0; j < n; ++j) q += A[((i + 1) * d + (j + 1)) * count + p] * v[i] * v[j];
            }
            if (q < nn / gamma * (1.0 - slack) || q > gamma * nn * (1.0 + slack))
                throw EllipticityViolation(
                    fmt::format("{}: A^ij xi xi / |xi|^2 = {} outside [1/gamma, gamma] = [{}, {}] at point {}", where,
                                q / nn, 1.0 / gamma, gamma, p));
        }
    }
}

}  // namespace tw
