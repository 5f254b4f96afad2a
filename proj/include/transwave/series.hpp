#pragma once
// Truncated Taylor series in t with fixed capacity: a(t) = Σ_{k≤order} a_k t^k.
//
// Coefficients above a series' order are zero, so a constant (order 0) combines
// exactly with any series; a binary result carries the larger order. Callers keep
// orders consistent when mixing derived quantities.

#include <array>
#include <cmath>

namespace tw {

class Series {
public:
    static constexpr int kCapacity = 10;

    Series() = default;
    Series(double c) { c_[0] = c; }  // NOLINT: constants convert implicitly
    Series(double c, int order) : order_(order) { c_[0] = c; }

    // t0 + t, i.e. the independent variable expanded about t0.
    static Series variable(double t0, int order);

    int order() const { return order_; }
    void set_order(int order);
    double operator[](int k) const { return c_[k]; }
    double& operator[](int k) { return c_[k]; }
    double value() const { return c_[0]; }

    // d/dt; the result has order one lower.
    Series derivative() const;
    // k-th Taylor derivative at 0: k! a_k.
    double derivative_at_zero(int k) const;

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Series& o);
    Series& operator/=(const Series& o);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, const Series& b) { return a *= b; }
    friend Series operator/(Series a, const Series& b) { return a /= b; }
    Series operator-() const;

private:
    std::array<double, kCapacity> c_{};
    int order_ = 0;
};

Series exp(const Series& a);
Series log(const Series& a);
Series sqrt(const Series& a);
Series sin(const Series& a);
Series cos(const Series& a);
Series pow(const Series& a, double p);
Series square(const Series& a);

double factorial(int k);
double binomial(int n, int k);

}  // namespace tw
