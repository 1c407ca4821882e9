#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pvpower/power.hpp"

namespace pvpower {

enum class RuleKind { pos_threshold, mle_threshold, confidence_test };

struct DecisionRule {
    RuleKind kind = RuleKind::pos_threshold;
    double threshold = 0.5;
    double beta0 = 0.5;  // confidence_test only
    double level = 0.8;  // confidence_test only: Go when p-value <= 1 - level

    std::string name() const;
    void validate() const;
    static std::vector<DecisionRule> table1();
};

struct SimConfig {
    std::string scenario = "custom";
    double true_theta = 0;
    double true_ctrl_rate = 0.43;
    TrialDesign phase2 = TrialDesign::phase2_default();
    TrialDesign phase3 = TrialDesign::phase3_default();
    long reps = 1000;
    std::uint64_t seed = 1;
    ParamGrid grid = ParamGrid::standard();
    double interval_level = 0.6;
    double wide_level = 0.95;  // second, wider interval for the nesting check

    void validate() const;
    static SimConfig table1(double theta, long reps, std::uint64_t seed);
};

struct ReplicateRecord {
    TwoArmCounts counts;
    bool flagged = false;  // a rate was clamped off 0 or 1
    bool failed = false;   // numerical failure; excluded from rates
    double theta_hat = 0;
    double beta_mle = 0, beta_pos = 0, probit_mle = 0;
    double conf_pvalue = 1;
    double push_lo = 0, push_hi = 0, delta_lo = 0, delta_hi = 0;
    double push_wide_lo = 0, push_wide_hi = 0;
    bool push_saturated = false;
    std::vector<char> go;
};

const char* generator_id();

TwoArmCounts simulate_phase2(const SimConfig& cfg, long replicate_index);
ReplicateRecord evaluate_replicate(const TwoArmCounts& counts, const SimConfig& cfg,
                                   const std::vector<DecisionRule>& rules);

struct SampleSummary {
    double mean = 0, median = 0, sd = 0, skew = 0;
    std::vector<double> bin_edges;
    std::vector<long> bin_counts;
};
SampleSummary summarize(const std::vector<double>& xs, int bins = 20);

struct SimReport {
    std::string scenario;
    std::vector<std::string> rules;
    std::vector<double> go_rate, mc_se;
    double coverage_pushforward = 0, coverage_delta = 0, coverage_wide = 0;
    double true_beta3 = 0;
    long reps = 0, n_flagged = 0, n_failed = 0, n_saturated = 0;
    std::uint64_t seed = 0;
    std::string generator_id;
    bool quality_warning = false;  // more than 1% flagged or failed
    std::vector<double> mle, pos, probit_mle;
};

// workers <= 0 picks the default (PVPOWER_WORKERS, else hardware concurrency).
SimReport operating_characteristics(const SimConfig& cfg, const std::vector<DecisionRule>& rules,
                                    int workers = 0);

struct CoverageRecord {
    double level, pushforward, delta, true_beta3;
};
CoverageRecord coverage_study(const SimConfig& cfg, int workers = 0);

struct EstimatorSamples {
    std::vector<double> mle, pos, probit_mle;
    SampleSummary mle_summary, pos_summary, probit_summary;
    double true_beta3 = 0;
};
EstimatorSamples estimator_sampling(const SimConfig& cfg, int workers = 0);
EstimatorSamples estimator_sampling(const SimReport& r);

int default_workers();

}  // namespace pvpower
