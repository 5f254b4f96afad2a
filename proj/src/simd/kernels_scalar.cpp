#include "transwave/simd.hpp"

#include <cmath>

namespace tw::simd {
namespace {

void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void mul(const double* x, const double* y, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

double dot(const double* x, const double* y, std::size_t n) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (int l = 0; l < 4; ++l) lane[l] += x[i + l] * y[i + l];
    for (; i < n; ++i) lane[i % 4] += x[i] * y[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
    return m;
}

void diff2(const double* f, double* out, std::size_t outer, std::size_t N, std::size_t inner,
           double c, bool accumulate) {
    for (std::size_t o = 0; o < outer; ++o) {
        const double* base = f + o * N * inner;
        double* obase = out + o * N * inner;
        for (std::size_t j = 0; j < N; ++j) {
            const double* fc = base + j * inner;
            const double* fp = base + ((j + 1) % N) * inner;
            const double* fm = base + ((j + N - 1) % N) * inner;
            double* oc = obase + j * inner;
            for (std::size_t i = 0; i < inner; ++i) {
                const double v = c * ((fp[i] + fm[i]) - (fc[i] + fc[i]));
                oc[i] = accumulate ? oc[i] + v : v;
            }
        }
    }
}

void diff1(const double* f, double* out, std::size_t outer, std::size_t N, std::size_t inner,
           double c, bool accumulate) {
    for (std::size_t o = 0; o < outer; ++o) {
        const double* base = f + o * N * inner;
        double* obase = out + o * N * inner;
        for (std::size_t j = 0; j < N; ++j) {
            const double* fp = base + ((j + 1) % N) * inner;
            const double* fm = base + ((j + N - 1) % N) * inner;
            double* oc = obase + j * inner;
            for (std::size_t i = 0; i < inner; ++i) {
                const double v = c * (fp[i] - fm[i]);
                oc[i] = accumulate ? oc[i] + v : v;
            }
        }
    }
}

void leapfrog(const double* r, const double* a, const double* d, const double* u, const double* up,
              double s2, double s1, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double as = a[i] * s2;
        const double ds = d[i] * s1;
        const double num = (r[i] + as * ((u[i] + u[i]) - up[i])) + ds * up[i];
        out[i] = num / (as + ds);
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{axpby, mul, dot, max_abs, diff2, diff1, leapfrog};
    return table;
}

}  // namespace tw::simd
