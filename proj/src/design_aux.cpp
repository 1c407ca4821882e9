#include "pvpower/design_aux.hpp"

#include <cmath>
#include <sstream>

#include "pvpower/errors.hpp"

namespace pvpower {

double effective_n_active(const ElicitationSummary& e) {
    if (!(e.ctrl_rate > 0 && e.ctrl_rate < 1)) throw DomainError("elicitation: ctrl_rate outside (0,1)");
    const double pa = e.ctrl_rate + e.mean_diff;
    if (!(pa > 0 && pa < 1)) throw DomainError("elicitation: implied active rate outside (0,1)");
    if (!(e.var_diff > 0)) throw DomainError("elicitation: var_diff must be positive");
    const double ctrl_term = std::isinf(e.n_ctrl) ? 0.0 : e.ctrl_rate * (1 - e.ctrl_rate) / e.n_ctrl;
    const double den = e.var_diff - ctrl_term;
    if (!(den > 0)) throw DomainError("elicitation too precise: variance does not exceed the control-arm term");
    return pa * (1 - pa) / den;
}

void ShiftEstimate::validate() const {
    if (!(delta_lo <= delta_hat && delta_hat <= delta_hi))
        throw DomainError("shift: need delta_lo <= delta_hat <= delta_hi");
}

namespace {

PowerCurve shifted(const PowerCurve& pc, double delta, int& clipped) {
    PowerCurve out = pc;
    const ParamGrid& g = pc.grid;
    int inside = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double t = g[i] - delta;
        if (t < g.lo()) {
            out.values[i] = pc.values.front();
            ++clipped;
        } else if (t > g.back()) {
            out.values[i] = pc.values.back();
            ++clipped;
        } else {
            out.values[i] = pc.at(t);
            ++inside;
        }
    }
    if (inside == 0) throw DomainError("extrapolation: shift moves the whole grid off the power curve");
    out.mde = pc.mde + delta;
    return out;
}

}  // namespace

BandedPowerCurve extrapolated_power_curve(const PowerCurve& pc3, const ShiftEstimate& s) {
    s.validate();
    int clipped = 0;
    BandedPowerCurve b{shifted(pc3, s.delta_hat, clipped), shifted(pc3, s.delta_hi, clipped),
                       shifted(pc3, s.delta_lo, clipped), 0};
    b.clipped = clipped;
    for (std::size_t i = 0; i < pc3.values.size(); ++i) {
        if (b.lower.values[i] > b.center.values[i] + 1e-12 || b.center.values[i] > b.upper.values[i] + 1e-12) {
            std::ostringstream m;
            m << "extrapolation band out of order at theta=" << pc3.grid[i];
            throw DomainError(m.str());
        }
    }
    return b;
}

BandedPowerAxis extrapolated_power_pvfn(const PValueFunction& H2, const PowerCurve& pc3, const ShiftEstimate& s) {
    const BandedPowerCurve b = extrapolated_power_curve(pc3, s);
    return {power_pvfn(H2, b.center), power_pvfn(H2, b.lower), power_pvfn(H2, b.upper)};
}

}  // namespace pvpower
