#include "transwave/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace tw::simd {
namespace {

Isa detect() {
    if (const char* env = std::getenv("TRANSWAVE_ISA"); env && std::string(env) == "scalar")
        return Isa::scalar;
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<int>& selected() {
    static std::atomic<int> isa{static_cast<int>(detect())};
    return isa;
}

}  // namespace

bool isa_available(Isa isa) {
    if (isa == Isa::scalar) return true;
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa active_isa() { return static_cast<Isa>(selected().load()); }

void force_isa(Isa isa) {
    selected().store(static_cast<int>(isa_available(isa) ? isa : Isa::scalar));
}

const KernelTable& kernels() {
    return active_isa() == Isa::avx2 ? avx2_kernels() : scalar_kernels();
}

}  // namespace tw::simd
