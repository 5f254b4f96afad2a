#include "transwave/simd.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#define TW_HAVE_AVX2 1
#include <immintrin.h>
#else
#define TW_HAVE_AVX2 0
#endif

#include <cmath>

namespace tw::simd {

#if TW_HAVE_AVX2
namespace {

void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x + i)),
                                        _mm256_mul_pd(vb, _mm256_loadu_pd(y + i)));
        _mm256_storeu_pd(out + i, t);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void mul(const double* x, const double* y, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) out[i] = x[i] * y[i];
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; i < n; ++i) lane[i % 4] += x[i] * y[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double max_abs(const double* x, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, m);
    double r = std::fmax(std::fmax(lane[0], lane[1]), std::fmax(lane[2], lane[3]));
    for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
    return r;
}

// Row update for contiguous neighbours fp, fm around fc, length len.
inline void diff2_row(const double* fp, const double* fm, const double* fc, double* oc,
                      std::size_t len, double c, bool accumulate) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d p = _mm256_loadu_pd(fp + i), m = _mm256_loadu_pd(fm + i);
        const __m256d x = _mm256_loadu_pd(fc + i);
        __m256d v = _mm256_mul_pd(vc, _mm256_sub_pd(_mm256_add_pd(p, m), _mm256_add_pd(x, x)));
        if (accumulate) v = _mm256_add_pd(_mm256_loadu_pd(oc + i), v);
        _mm256_storeu_pd(oc + i, v);
    }
    for (; i < len; ++i) {
        const double v = c * ((fp[i] + fm[i]) - (fc[i] + fc[i]));
        oc[i] = accumulate ? oc[i] + v : v;
    }
}

inline void diff1_row(const double* fp, const double* fm, double* oc, std::size_t len, double c,
                      bool accumulate) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        __m256d v = _mm256_mul_pd(vc, _mm256_sub_pd(_mm256_loadu_pd(fp + i), _mm256_loadu_pd(fm + i)));
        if (accumulate) v = _mm256_add_pd(_mm256_loadu_pd(oc + i), v);
        _mm256_storeu_pd(oc + i, v);
    }
    for (; i < len; ++i) {
        const double v = c * (fp[i] - fm[i]);
        oc[i] = accumulate ? oc[i] + v : v;
    }
}

void diff2(const double* f, double* out, std::size_t outer, std::size_t N, std::size_t inner,
           double c, bool accumulate) {
    for (std::size_t o = 0; o < outer; ++o) {
        const double* base = f + o * N * inner;
        double* obase = out + o * N * inner;
        if (inner == 1) {
            // Contiguous axis: vectorize over j, wrap the two end points.
            diff2_row(base + 2, base, base + 1, obase + 1, N - 2, c, accumulate);
            for (std::size_t j : {std::size_t{0}, N - 1}) {
                const double v = c * ((base[(j + 1) % N] + base[(j + N - 1) % N]) - (base[j] + base[j]));
                obase[j] = accumulate ? obase[j] + v : v;
            }
            continue;
        }
        for (std::size_t j = 0; j < N; ++j)
            diff2_row(base + ((j + 1) % N) * inner, base + ((j + N - 1) % N) * inner, base + j * inner,
                      obase + j * inner, inner, c, accumulate);
    }
}

void diff1(const double* f, double* out, std::size_t outer, std::size_t N, std::size_t inner,
           double c, bool accumulate) {
    for (std::size_t o = 0; o < outer; ++o) {
        const double* base = f + o * N * inner;
        double* obase = out + o * N * inner;
        if (inner == 1) {
            diff1_row(base + 2, base, obase + 1, N - 2, c, accumulate);
            for (std::size_t j : {std::size_t{0}, N - 1}) {
                const double v = c * (base[(j + 1) % N] - base[(j + N - 1) % N]);
                obase[j] = accumulate ? obase[j] + v : v;
            }
            continue;
        }
        for (std::size_t j = 0; j < N; ++j)
            diff1_row(base + ((j + 1) % N) * inner, base + ((j + N - 1) % N) * inner, obase + j * inner,
                      inner, c, accumulate);
    }
}

void leapfrog(const double* r, const double* a, const double* d, const double* u, const double* up,
              double s2, double s1, double* out, std::size_t n) {
    const __m256d v2 = _mm256_set1_pd(s2), v1 = _mm256_set1_pd(s1);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d as = _mm256_mul_pd(_mm256_loadu_pd(a + i), v2);
        const __m256d ds = _mm256_mul_pd(_mm256_loadu_pd(d + i), v1);
        const __m256d vu = _mm256_loadu_pd(u + i), vup = _mm256_loadu_pd(up + i);
        const __m256d num = _mm256_add_pd(
            _mm256_add_pd(_mm256_loadu_pd(r + i), _mm256_mul_pd(as, _mm256_sub_pd(_mm256_add_pd(vu, vu), vup))),
            _mm256_mul_pd(ds, vup));
        _mm256_storeu_pd(out + i, _mm256_div_pd(num, _mm256_add_pd(as, ds)));
    }
    for (; i < n; ++i) {
        const double as = a[i] * s2;
        const double ds = d[i] * s1;
        const double num = (r[i] + as * ((u[i] + u[i]) - up[i])) + ds * up[i];
        out[i] = num / (as + ds);
    }
}

}  // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{axpby, mul, dot, max_abs, diff2, diff1, leapfrog};
    return table;
}

#else

const KernelTable& avx2_kernels() { return scalar_kernels(); }

#endif

}  // namespace tw::simd
