#pragma once

#include "pvpower/pvfn.hpp"

namespace pvpower {

struct WeightedPvfn {
    const PValueFunction& H;
    double se;  // standard error that sets this input's inverse-variance weight
};

// Binomial standard error of a difference in proportions, the usual weight source.
double diff_se(double p_ctrl, double n_ctrl, double p_active, double n_active);

struct ConvolveOptions {
    bool clamp = true;  // clamp into [1e-12, 1-1e-12] before the probit
};

PValueFunction convolve(const WeightedPvfn& a, const WeightedPvfn& b, ConvolveOptions opt = {});
PValueFunction multiply(const PValueFunction& a, const PValueFunction& b);
PValueFunction or_combine(const PValueFunction& a, const PValueFunction& b);

}  // namespace pvpower
