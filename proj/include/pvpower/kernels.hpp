#pragma once

#include <cstddef>

// Data-parallel inner loops with a scalar reference and an AVX2 variant.
// Dispatch happens once at first use; PVPOWER_SIMD=scalar pins the reference path.

namespace pvpower::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
const char* isa_name(Isa);
void force_isa(Isa);  // for tests; avx2 is ignored when the CPU lacks it
bool cpu_has_avx2();

// Fixed-point sweep for the null-restricted control rate, one lane per theta0.
// status[i]: 0 converged, 1 hit the iteration cap, 2 left the feasible region.
struct SweepArgs {
    double xc, nc, xa, na;
    const double* theta0;
    std::size_t n;
    double tol;
    int max_iter;
};
void restricted_sweep(const SweepArgs& a, double* p_out, int* iters, int* status);

// sum_{i>=1} w[i]*(H[i]-H[i-1]) and sum_{i>=1} (H[i]-H[i-1]).
struct LagSums {
    double weighted, mass;
};
LagSums weighted_lag_sum(const double* w, const double* H, std::size_t n);

namespace scalar {
void restricted_sweep(const SweepArgs& a, double* p_out, int* iters, int* status);
LagSums weighted_lag_sum(const double* w, const double* H, std::size_t n);
}  // namespace scalar

namespace avx2 {
void restricted_sweep(const SweepArgs& a, double* p_out, int* iters, int* status);
LagSums weighted_lag_sum(const double* w, const double* H, std::size_t n);
}  // namespace avx2

}  // namespace pvpower::kernels
