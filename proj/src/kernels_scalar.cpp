#include <cmath>

#include "pvpower/kernels.hpp"

namespace pvpower::kernels::scalar {

// The avx2 twin performs exactly these operations in exactly this order.
// With contraction off that makes the two paths agree bit for bit.
void restricted_sweep(const SweepArgs& a, double* p_out, int* iters, int* status) {
    const double start = a.xc / a.nc;
    for (std::size_t i = 0; i < a.n; ++i) {
        const double th = a.theta0[i];
        const double lo = th < 0.0 ? -th : 0.0;
        const double hi = th > 0.0 ? 1.0 - th : 1.0;
        double p = (start > lo && start < hi) ? start : 0.5 * (lo + hi);
        int st = 1, k = 0;
        while (k < a.max_iter) {
            const double q1 = 1.0 - p;
            const double ppq = p * q1;
            const double pa = p + th;
            const double qa = q1 - th;
            const double num = (a.xc + (a.xa * ppq) / pa) + (a.xa * ppq) / qa;
            const double den = a.nc + (a.na * q1) / qa;
            const double q = num / den;
            ++k;
            if (!(q > lo && q < hi)) {
                st = 2;
                break;
            }
            const double d = q - p;
            p = q;
            if (std::fabs(d) < a.tol) {
                st = 0;
                break;
            }
        }
        p_out[i] = p;
        iters[i] = k;
        status[i] = st;
    }
}

LagSums weighted_lag_sum(const double* w, const double* H, std::size_t n) {
    double ws = 0.0, ms = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = H[i] - H[i - 1];
        ws += w[i] * d;
        ms += d;
    }
    return {ws, ms};
}

}  // namespace pvpower::kernels::scalar
