#include "pvpower/pos.hpp"

#include <algorithm>
#include <cmath>

#include "pvpower/errors.hpp"
#include "pvpower/kernels.hpp"

namespace pvpower {

namespace {

PosResult lag_average(const std::vector<double>& w, const PValueFunction& H) {
    if (H.tail() != Tail::upper) throw DomainError("pos: H must be upper-tail");
    const auto s = kernels::weighted_lag_sum(w.data(), H.values().data(), H.size());
    if (!(s.mass > 0)) throw DegenerateMassError("pos: H puts no mass on the grid");
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    const double v = std::clamp(s.weighted / s.mass, *lo, *hi);
    return {v, s.mass, s.mass < 0.99};
}

}  // namespace

PosResult pos_detail(const PValueFunction& H, const PowerCurve& pc) {
    if (H.grid() != pc.grid) throw GridMismatchError("pos: H and power curve grids differ");
    return lag_average(pc.values, H);
}

double pos(const PValueFunction& H, const PowerCurve& pc) { return pos_detail(H, pc).value; }

double joint_pos(const PValueFunction& H, const PowerCurve& pc2, const PowerCurve& pc3) {
    if (H.grid() != pc2.grid || H.grid() != pc3.grid) throw GridMismatchError("joint_pos: grids differ");
    std::vector<double> w(pc2.values.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = pc2.values[i] * pc3.values[i];
    return lag_average(w, H).value;
}

double pos_power_axis(const PowerAxisFunction& Hb) {
    const auto s = kernels::weighted_lag_sum(Hb.power().data(), Hb.values().data(), Hb.size());
    if (!(s.mass > 0)) throw DegenerateMassError("pos: no mass on the power axis");
    return s.weighted / s.mass;
}

ConfidenceDensity conditional_density(const PValueFunction& H, const PowerCurve& pc2) {
    if (H.grid() != pc2.grid) throw GridMismatchError("conditional_density: grids differ");
    ConfidenceDensity d = confidence_density(H);
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] *= pc2.values[i];
    const double m = d.mass();
    if (!(m > 0)) throw DegenerateMassError("conditional_density: zero mass after weighting");
    for (double& v : d.values) v /= m;
    d.normalization = m;
    return d;
}

double conditional_pos(const ConfidenceDensity& h, const PowerCurve& pc3) {
    if (h.grid != pc3.grid) throw GridMismatchError("conditional_pos: grids differ");
    double s = 0, w = 0;
    for (std::size_t i = 0; i < h.values.size(); ++i) {
        s += pc3.values[i] * h.values[i];
        w += h.values[i];
    }
    if (!(w > 0)) throw DegenerateMassError("conditional_pos: density has no mass");
    return std::clamp(s / w, 0.0, 1.0);
}

}  // namespace pvpower
