#include "pvpower/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace pvpower::kernels {

namespace {

std::atomic<int> g_isa{-1};

Isa pick() {
    const char* env = std::getenv("PVPOWER_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

}  // namespace

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa active_isa() {
    int v = g_isa.load(std::memory_order_relaxed);
    if (v < 0) {
        v = static_cast<int>(pick());
        g_isa.store(v, std::memory_order_relaxed);
    }
    return static_cast<Isa>(v);
}

void force_isa(Isa isa) {
    if (isa == Isa::avx2 && !cpu_has_avx2()) isa = Isa::scalar;
    g_isa.store(static_cast<int>(isa), std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void restricted_sweep(const SweepArgs& a, double* p_out, int* iters, int* status) {
    if (active_isa() == Isa::avx2)
        avx2::restricted_sweep(a, p_out, iters, status);
    else
        scalar::restricted_sweep(a, p_out, iters, status);
}

LagSums weighted_lag_sum(const double* w, const double* H, std::size_t n) {
    return active_isa() == Isa::avx2 ? avx2::weighted_lag_sum(w, H, n) : scalar::weighted_lag_sum(w, H, n);
}

}  // namespace pvpower::kernels
