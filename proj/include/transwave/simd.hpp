#pragma once
// Inner-loop kernels with a scalar reference and an AVX2 variant, chosen at runtime.
//
// Elementwise kernels perform the same operations in the same order in both
// variants (no FMA), so results agree bit for bit. Reductions accumulate in four
// interleaved lanes in both variants for the same reason.

#include <cstddef>
#include <string_view>

namespace tw::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
    // out = a*x + b*y
    void (*axpby)(double a, const double* x, double b, const double* y, double* out, std::size_t n);
    // out = x*y
    void (*mul)(const double* x, const double* y, double* out, std::size_t n);
    // sum of x*y over four interleaved lanes, combined as (l0+l1)+(l2+l3)
    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*max_abs)(const double* x, std::size_t n);
    // out[o,j,i] (+)= c*(f[o,j+1,i] + f[o,j-1,i] - 2 f[o,j,i]), j periodic in [0,N)
    void (*diff2)(const double* f, double* out, std::size_t outer, std::size_t N, std::size_t inner,
                  double c, bool accumulate);
    // out[o,j,i] (+)= c*(f[o,j+1,i] - f[o,j-1,i]), j periodic
    void (*diff1)(const double* f, double* out, std::size_t outer, std::size_t N, std::size_t inner,
                  double c, bool accumulate);
    // out = (r + (a*s2)*((u+u) - up) + (d*s1)*up) / (a*s2 + d*s1)
    void (*leapfrog)(const double* r, const double* a, const double* d, const double* u,
                     const double* up, double s2, double s1, double* out, std::size_t n);
};

const KernelTable& scalar_kernels();
const KernelTable& avx2_kernels();

bool isa_available(Isa isa);
std::string_view isa_name(Isa isa);

// Active table: AVX2 when the CPU supports it, unless TRANSWAVE_ISA=scalar or force_isa says otherwise.
const KernelTable& kernels();
Isa active_isa();
void force_isa(Isa isa);

}  // namespace tw::simd
