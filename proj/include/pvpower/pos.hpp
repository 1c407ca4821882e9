#pragma once

#include "pvpower/power.hpp"

namespace pvpower {

struct PosResult {
    double value;
    double mass;     // sum of lag differences actually covered by the grid
    bool truncated;  // mass < 0.99
};

PosResult pos_detail(const PValueFunction& H, const PowerCurve& pc);
double pos(const PValueFunction& H, const PowerCurve& pc);
double joint_pos(const PValueFunction& H, const PowerCurve& pc2, const PowerCurve& pc3);

// Same sum taken on the power axis, as an integral of beta against dH(beta).
double pos_power_axis(const PowerAxisFunction& Hb);

ConfidenceDensity conditional_density(const PValueFunction& H, const PowerCurve& pc2);
double conditional_pos(const ConfidenceDensity& h_cond, const PowerCurve& pc3);

}  // namespace pvpower
