#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pvpower/pvfn.hpp"

namespace pvpower {

struct TrialDesign {
    double n_ctrl = 0;
    double n_active = 0;
    double theta0 = 0;  // null margin, tested one-sided against the upper alternative
    double alpha = 0.025;

    void validate() const;
    static TrialDesign phase2_default() { return {90, 90, -0.05, 0.20}; }
    static TrialDesign phase3_default() { return {365, 365, -0.12, 0.025}; }
};

struct PowerCurve {
    ParamGrid grid;
    std::vector<double> values;
    TrialDesign design;
    double ctrl_rate = 0;
    double mde = 0;

    double at(double theta) const;  // linear; OutOfRangeError off grid
    // Argument where the curve crosses beta (linear); OutOfRangeError if it never does.
    double inverse(double beta) const;
    PValueFunction as_pvfn() const;
};

double mde(const TrialDesign& d, double ctrl_rate);
PowerCurve power_curve(const TrialDesign& d, double ctrl_rate, const ParamGrid& grid);

// beta(theta, p_ctrl) off the grid, and its probit. The probit is the signed LRT root,
// so it stays finite where beta itself rounds to 0 or 1.
double power_at(const TrialDesign& d, double ctrl_rate, double theta);
double probit_power_at(const TrialDesign& d, double ctrl_rate, double theta);

// Pushforward of H through the power curve: pairs (beta(theta_i), H(theta_i)) sorted by beta.
PowerAxisFunction power_pvfn(const PValueFunction& H, const PowerCurve& pc);

double power_point_estimate(const PowerCurve& pc, double theta_hat);

struct DeltaPowerInference {
    double beta_hat = 0;
    double g_hat = 0;       // probit of beta_hat
    double se = 0;          // of g_hat
    double grad_theta = 0;  // d g / d theta
    double grad_p = 0;      // d g / d p_ctrl
    bool clamped = false;   // beta_hat pulled into [1e-6, 1-1e-6]

    double pvalue(double beta0) const;  // 1 - Phi((g_hat - g(beta0))/se)
    std::pair<double, double> interval(double level) const;
    PowerAxisFunction tabulate(std::size_t points = 999) const;
};

DeltaPowerInference delta_wald_power(const TwoArmCounts& external, const TrialDesign& d,
                                     double fd_step = 1e-5);
PowerAxisFunction delta_wald_power_pvfn(const TwoArmCounts& external, const TrialDesign& d);

}  // namespace pvpower
