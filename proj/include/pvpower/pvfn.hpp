#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pvpower/binom_model.hpp"
#include "pvpower/grid.hpp"

namespace pvpower {

enum class Tail { upper, lower };
const char* tail_name(Tail);
Tail parse_tail(const std::string&);

// Tabulated p-value function theta -> p on a grid.
class PValueFunction {
public:
    // Monotonicity is checked here. Violations below 1e-9 are float noise and get
    // flattened by a running max (min for lower tail); anything larger throws.
    PValueFunction(ParamGrid grid, std::vector<double> values, Tail tail, std::string source,
                   double point_estimate = std::numeric_limits<double>::quiet_NaN());

    const ParamGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return v_; }
    Tail tail() const noexcept { return tail_; }
    const std::string& source() const noexcept { return source_; }
    std::size_t size() const noexcept { return v_.size(); }
    double operator[](std::size_t i) const noexcept { return v_[i]; }
    int repaired() const noexcept { return repaired_; }

    // Point estimate if the construction knows it, else the 0.5 crossing.
    double point_estimate() const;
    bool has_point_estimate() const noexcept;

    double at(double theta) const;      // linear interpolation; OutOfRangeError off grid
    double quantile(double p) const;    // theta where the function crosses p
    std::pair<double, double> interval(double level) const;  // equal tailed, sorted
    double min_value() const;
    double max_value() const;

private:
    ParamGrid grid_;
    std::vector<double> v_;
    Tail tail_;
    std::string source_;
    double theta_hat_;
    int repaired_ = 0;
};

struct ConfidenceCurve {
    ParamGrid grid;
    std::vector<double> values;
    double point_estimate;  // grid argmax
};

struct ConfidenceDensity {
    ParamGrid grid;
    std::vector<double> values;
    double normalization;  // sum(values)*step before any renormalizing

    double mass() const;
    double mean() const;
    double variance() const;
};

PValueFunction upper_pvfn_lrt(const TwoArmCounts& counts, const ParamGrid& grid);
PValueFunction upper_pvfn_wald(const TwoArmCounts& counts, const ParamGrid& grid);
PValueFunction lower_pvfn(const PValueFunction& H);
ConfidenceCurve confidence_curve(const PValueFunction& H);
ConfidenceDensity confidence_density(const PValueFunction& H);

// Upper LRT p-value at a single theta0. Cheaper than a full grid when only one point is needed.
double lrt_upper_pvalue(const TwoArmCounts& counts, double theta0);

// p-value function whose argument is power rather than theta. The axis is not uniform:
// it is the image of a theta grid under a power curve, sorted ascending.
class PowerAxisFunction {
public:
    PowerAxisFunction(std::vector<double> power, std::vector<double> values, std::string source);

    const std::vector<double>& power() const noexcept { return b_; }
    const std::vector<double>& values() const noexcept { return v_; }
    const std::string& source() const noexcept { return source_; }
    std::size_t size() const noexcept { return b_.size(); }

    // Outside the covered power range the end value is returned and *saturated set.
    double at(double beta, bool* saturated = nullptr) const;
    double quantile(double p, bool* saturated = nullptr) const;
    std::pair<double, double> interval(double level, bool* saturated = nullptr) const;

private:
    std::vector<double> b_, v_;
    std::string source_;
};

}  // namespace pvpower
