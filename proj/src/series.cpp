#include "transwave/series.hpp"

#include <algorithm>

#include "transwave/errors.hpp"

namespace tw {

Series Series::variable(double t0, int order) {
    Series s(t0, order);
    if (order >= 1) s.c_[1] = 1.0;
    return s;
}

void Series::set_order(int order) {
    if (order < 0 || order >= kCapacity) throw InvalidArgument("series order out of range");
    for (int k = order + 1; k < kCapacity; ++k) c_[k] = 0.0;
    order_ = order;
}

Series Series::derivative() const {
    Series d;
    d.order_ = std::max(0, order_ - 1);
    for (int k = 1; k <= order_; ++k) d.c_[k - 1] = k * c_[k];
    return d;
}

double Series::derivative_at_zero(int k) const { return factorial(k) * c_[k]; }

Series& Series::operator+=(const Series& o) {
    order_ = std::max(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    return *this;
}

Series& Series::operator-=(const Series& o) {
    order_ = std::max(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    return *this;
}

Series& Series::operator*=(const Series& o) {
    const int n = std::max(order_, o.order_);
    std::array<double, kCapacity> r{};
    for (int k = 0; k <= n; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += c_[j] * o.c_[k - j];
        r[k] = s;
    }
    c_ = r;
    order_ = n;
    return *this;
}

Series& Series::operator/=(const Series& o) {
    const int n = std::max(order_, o.order_);
    std::array<double, kCapacity> r{};
    for (int k = 0; k <= n; ++k) {
        double s = c_[k];
        for (int j = 1; j <= k; ++j) s -= o.c_[j] * r[k - j];
        r[k] = s / o.c_[0];
    }
    c_ = r;
    order_ = n;
    return *this;
}

Series Series::operator-() const {
    Series r = *this;
    for (int k = 0; k <= order_; ++k) r.c_[k] = -r.c_[k];
    return r;
}

Series exp(const Series& a) {
    Series y(std::exp(a[0]), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * a[j] * y[k - j];
        y[k] = s / k;
    }
    return y;
}

Series log(const Series& a) {
    Series y(std::log(a[0]), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        double s = k * a[k];
        for (int j = 1; j < k; ++j) s -= j * y[j] * a[k - j];
        y[k] = s / (k * a[0]);
    }
    return y;
}

Series pow(const Series& a, double p) {
    // y = a^p satisfies a y' = p a' y.
    Series y(std::pow(a[0], p), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += (p * j - (k - j)) * a[j] * y[k - j];
        y[k] = s / (k * a[0]);
    }
    return y;
}

Series sqrt(const Series& a) { return pow(a, 0.5); }

namespace {

void sincos(const Series& a, Series& s, Series& c) {
    s = Series(std::sin(a[0]), a.order());
    c = Series(std::cos(a[0]), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        double ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * a[j] * c[k - j];
            cc -= j * a[j] * s[k - j];
        }
        s[k] = ss / k;
        c[k] = cc / k;
    }
}

}  // namespace

Series sin(const Series& a) {
    Series s, c;
    sincos(a, s, c);
    return s;
}

Series cos(const Series& a) {
    Series s, c;
    sincos(a, s, c);
    return c;
}

Series square(const Series& a) { return a * a; }

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace tw
