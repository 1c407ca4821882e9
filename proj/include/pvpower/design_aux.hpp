#pragma once

#include "pvpower/power.hpp"

namespace pvpower {

struct ElicitationSummary {
    double mean_diff;
    double var_diff;
    double ctrl_rate;
    double n_ctrl;
};

double effective_n_active(const ElicitationSummary& e);

struct ShiftEstimate {
    double delta_hat = 0, delta_lo = 0, delta_hi = 0;
    void validate() const;
};

// The shift is subtracted (beta3(theta - delta)), so on an increasing curve the
// delta_hi member sits lowest. `lower` is built from delta_hi and `upper` from delta_lo.
struct BandedPowerCurve {
    PowerCurve center, lower, upper;
    int clipped = 0;  // grid points whose shifted argument fell off the source grid
};

BandedPowerCurve extrapolated_power_curve(const PowerCurve& pc3, const ShiftEstimate& s);

struct BandedPowerAxis {
    PowerAxisFunction center, lower, upper;
};

BandedPowerAxis extrapolated_power_pvfn(const PValueFunction& H2, const PowerCurve& pc3,
                                        const ShiftEstimate& s);

}  // namespace pvpower
