#include "pvpower/combine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pvpower/errors.hpp"
#include "pvpower/special.hpp"

namespace pvpower {

namespace {

void same_grid(const PValueFunction& a, const PValueFunction& b, const char* op) {
    if (a.grid() != b.grid()) throw GridMismatchError(std::string(op) + ": input grids differ");
}

}  // namespace

double diff_se(double p_ctrl, double n_ctrl, double p_active, double n_active) {
    const double v = p_ctrl * (1 - p_ctrl) / n_ctrl + p_active * (1 - p_active) / n_active;
    if (!(v > 0) || !std::isfinite(v)) throw DomainError("diff_se: variance must be positive and finite");
    return std::sqrt(v);
}

PValueFunction convolve(const WeightedPvfn& a, const WeightedPvfn& b, ConvolveOptions opt) {
    same_grid(a.H, b.H, "convolve");
    if (a.H.tail() != Tail::upper || b.H.tail() != Tail::upper) throw DomainError("convolve: inputs must be upper-tail");
    if (!(a.se > 0 && std::isfinite(a.se) && b.se > 0 && std::isfinite(b.se)))
        throw DomainError("convolve: standard errors must be positive and finite");
    const double wa = 1.0 / a.se, wb = 1.0 / b.se;
    const double norm = std::sqrt(wa * wa + wb * wb);
    constexpr double eps = 1e-12;
    std::vector<double> v(a.H.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double ha = a.H[i], hb = b.H[i];
        if (opt.clamp) {
            ha = std::clamp(ha, eps, 1 - eps);
            hb = std::clamp(hb, eps, 1 - eps);
        } else if (ha <= 0 || ha >= 1 || hb <= 0 || hb >= 1) {
            std::ostringstream m;
            m << "convolve: p-value at the boundary at theta=" << a.H.grid()[i];
            throw BoundaryError(m.str());
        }
        v[i] = norm_cdf((norm_ppf(ha) * wa + norm_ppf(hb) * wb) / norm);
    }
    std::ostringstream src;
    src << "convolve(se=" << a.se << ":" << a.H.source() << " ; se=" << b.se << ":" << b.H.source() << ")";
    return PValueFunction(a.H.grid(), std::move(v), Tail::upper, src.str());
}

PValueFunction multiply(const PValueFunction& a, const PValueFunction& b) {
    same_grid(a, b, "multiply");
    if (a.tail() != Tail::upper || b.tail() != Tail::upper) throw DomainError("multiply: inputs must be upper-tail");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
    return PValueFunction(a.grid(), std::move(v), Tail::upper, "multiply(" + a.source() + " ; " + b.source() + ")");
}

PValueFunction or_combine(const PValueFunction& a, const PValueFunction& b) {
    same_grid(a, b, "or_combine");
    if (a.tail() != Tail::lower || b.tail() != Tail::lower) throw DomainError("or_combine: inputs must be lower-tail");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::min(1.0, a[i] + b[i] - a[i] * b[i]);
    return PValueFunction(a.grid(), std::move(v), Tail::lower, "or(" + a.source() + " ; " + b.source() + ")");
}

}  // namespace pvpower
