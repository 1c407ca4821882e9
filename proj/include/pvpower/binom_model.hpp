#pragma once

#include <vector>

namespace pvpower {

// Counts may be fractional: design-stage curves use expected counts p*n.
struct TwoArmCounts {
    double x_ctrl = 0, n_ctrl = 0, x_active = 0, n_active = 0;

    // n_active == 0 is accepted so the control arm can be profiled alone.
    void validate() const;
    static TwoArmCounts expected(double p_ctrl, double n_ctrl, double p_active, double n_active);
};

struct RateParams {
    double p_ctrl = 0.5;
    double theta = 0;  // p_active - p_ctrl
    double p_active() const noexcept { return p_ctrl + theta; }
    void validate() const;
};

double log_likelihood(const TwoArmCounts& c, const RateParams& p);

// d loglik / d p_ctrl with theta held fixed
double ctrl_score(const TwoArmCounts& c, double p_ctrl, double theta0);

RateParams mle(const TwoArmCounts& c);

struct RestrictedFit {
    double p_ctrl;
    double residual;  // |score| at p_ctrl
    int iterations;   // fixed-point steps taken
};

RestrictedFit restricted_ctrl_fit(const TwoArmCounts& c, double theta0);
double restricted_ctrl_mle(const TwoArmCounts& c, double theta0);

// Batched version over many theta0; same answers as the scalar call, element by element.
std::vector<RestrictedFit> restricted_ctrl_fit(const TwoArmCounts& c, const std::vector<double>& theta0);

double lrt_statistic(const TwoArmCounts& c, double theta0);
double wald_z(const TwoArmCounts& c, double theta0);

// Feasible open interval for p_ctrl given theta0.
double feasible_lo(double theta0) noexcept;
double feasible_hi(double theta0) noexcept;

constexpr double kScoreTol = 1e-8;
constexpr int kMaxFixedPoint = 500;

}  // namespace pvpower
