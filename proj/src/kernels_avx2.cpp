// Built with -mavx2 and without -mfma. Only reached after a cpuid check.

#include "pvpower/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace pvpower::kernels::avx2 {

#if defined(__AVX2__)

void restricted_sweep(const SweepArgs& a, double* p_out, int* iters, int* status) {
    const std::size_t nv = a.n / 4 * 4;
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d xc = _mm256_set1_pd(a.xc), nc = _mm256_set1_pd(a.nc);
    const __m256d xa = _mm256_set1_pd(a.xa), na = _mm256_set1_pd(a.na);
    const __m256d tol = _mm256_set1_pd(a.tol);
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d start = _mm256_set1_pd(a.xc / a.nc);

    for (std::size_t i = 0; i < nv; i += 4) {
        const __m256d th = _mm256_loadu_pd(a.theta0 + i);
        const __m256d neg_th = _mm256_sub_pd(zero, th);
        const __m256d lo = _mm256_blendv_pd(zero, neg_th, _mm256_cmp_pd(th, zero, _CMP_LT_OQ));
        const __m256d hi = _mm256_blendv_pd(one, _mm256_sub_pd(one, th), _mm256_cmp_pd(th, zero, _CMP_GT_OQ));
        const __m256d ok0 = _mm256_and_pd(_mm256_cmp_pd(start, lo, _CMP_GT_OQ), _mm256_cmp_pd(start, hi, _CMP_LT_OQ));
        __m256d p = _mm256_blendv_pd(_mm256_mul_pd(half, _mm256_add_pd(lo, hi)), start, ok0);

        // live lanes are all-ones; a lane drops out once it converges or leaves the box
        __m256d live = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
        __m256d infeasible = zero;
        __m256i k = _mm256_setzero_si256();
        const __m256i inc = _mm256_set1_epi64x(1);
        for (int it = 0; it < a.max_iter && _mm256_movemask_pd(live) != 0; ++it) {
            const __m256d q1 = _mm256_sub_pd(one, p);
            const __m256d ppq = _mm256_mul_pd(p, q1);
            const __m256d pa = _mm256_add_pd(p, th);
            const __m256d qa = _mm256_sub_pd(q1, th);
            const __m256d t1 = _mm256_div_pd(_mm256_mul_pd(xa, ppq), pa);
            const __m256d t2 = _mm256_div_pd(_mm256_mul_pd(xa, ppq), qa);
            const __m256d num = _mm256_add_pd(_mm256_add_pd(xc, t1), t2);
            const __m256d den = _mm256_add_pd(nc, _mm256_div_pd(_mm256_mul_pd(na, q1), qa));
            const __m256d q = _mm256_div_pd(num, den);
            k = _mm256_add_epi64(k, _mm256_and_si256(inc, _mm256_castpd_si256(live)));

            const __m256d inside = _mm256_and_pd(_mm256_cmp_pd(q, lo, _CMP_GT_OQ), _mm256_cmp_pd(q, hi, _CMP_LT_OQ));
            const __m256d out = _mm256_andnot_pd(inside, live);
            infeasible = _mm256_or_pd(infeasible, out);
            const __m256d step_ok = _mm256_and_pd(live, inside);
            const __m256d d = _mm256_and_pd(_mm256_sub_pd(q, p), absmask);
            p = _mm256_blendv_pd(p, q, step_ok);
            const __m256d conv = _mm256_and_pd(step_ok, _mm256_cmp_pd(d, tol, _CMP_LT_OQ));
            live = _mm256_andnot_pd(_mm256_or_pd(out, conv), live);
        }
        alignas(32) double pv[4];
        alignas(32) long long kv[4];
        alignas(32) double lv[4], iv[4];
        _mm256_store_pd(pv, p);
        _mm256_store_si256(reinterpret_cast<__m256i*>(kv), k);
        _mm256_store_pd(lv, live);
        _mm256_store_pd(iv, infeasible);
        for (int j = 0; j < 4; ++j) {
            p_out[i + j] = pv[j];
            iters[i + j] = static_cast<int>(kv[j]);
            const bool still = _mm256_movemask_pd(_mm256_load_pd(lv)) >> j & 1;
            const bool bad = _mm256_movemask_pd(_mm256_load_pd(iv)) >> j & 1;
            status[i + j] = bad ? 2 : (still ? 1 : 0);
        }
    }
    if (nv < a.n) {
        SweepArgs rest = a;
        rest.theta0 = a.theta0 + nv;
        rest.n = a.n - nv;
        scalar::restricted_sweep(rest, p_out + nv, iters + nv, status + nv);
    }
}

LagSums weighted_lag_sum(const double* w, const double* H, std::size_t n) {
    if (n < 2) return {0.0, 0.0};
    __m256d ws = _mm256_setzero_pd(), ms = _mm256_setzero_pd();
    std::size_t i = 1;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(H + i), _mm256_loadu_pd(H + i - 1));
        ws = _mm256_add_pd(ws, _mm256_mul_pd(_mm256_loadu_pd(w + i), d));
        ms = _mm256_add_pd(ms, d);
    }
    alignas(32) double a[4], b[4];
    _mm256_store_pd(a, ws);
    _mm256_store_pd(b, ms);
    double wsum = (a[0] + a[1]) + (a[2] + a[3]);
    double msum = (b[0] + b[1]) + (b[2] + b[3]);
    for (; i < n; ++i) {
        const double d = H[i] - H[i - 1];
        wsum += w[i] * d;
        msum += d;
    }
    return {wsum, msum};
}

#else

void restricted_sweep(const SweepArgs& a, double* p_out, int* iters, int* status) {
    scalar::restricted_sweep(a, p_out, iters, status);
}
LagSums weighted_lag_sum(const double* w, const double* H, std::size_t n) {
    return scalar::weighted_lag_sum(w, H, n);
}

#endif

}  // namespace pvpower::kernels::avx2
