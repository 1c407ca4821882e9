#include <catch_amalgamated.hpp>

#include <cmath>

#include "pvpower/errors.hpp"
#include "pvpower/io_config.hpp"
#include "pvpower/simlab.hpp"

using namespace pvpower;
using Catch::Approx;

namespace {

SimConfig small(double theta, long reps, std::uint64_t seed) {
    SimConfig c = SimConfig::table1(theta, reps, seed);
    return c;
}

nlohmann::json stripped(const SimReport& r) {
    nlohmann::json j = to_json(r);
    j.erase("environment");
    return j;
}

}  // namespace

TEST_CASE("phase 2 draws are reproducible and binomially distributed") {
    const SimConfig c = small(-0.05, 1, 99);
    const TwoArmCounts a = simulate_phase2(c, 17), b = simulate_phase2(c, 17);
    CHECK(a.x_ctrl == b.x_ctrl);
    CHECK(a.x_active == b.x_active);
    double s = 0, ss = 0;
    const int R = 4000;
    for (int i = 0; i < R; ++i) {
        const double x = simulate_phase2(c, i).x_active;
        s += x;
        ss += x * x;
    }
    const double mean = s / R, var = ss / R - mean * mean;
    const double p = 0.38;
    CHECK(mean == Approx(90 * p).margin(4 * std::sqrt(90 * p * (1 - p) / R)));
    CHECK(var == Approx(90 * p * (1 - p)).epsilon(0.1));
}

TEST_CASE("reports are deterministic and invariant to worker count") {
    const SimConfig c = small(-0.05, 24, 2024);
    const SimReport a = operating_characteristics(c, DecisionRule::table1(), 1);
    const SimReport b = operating_characteristics(c, DecisionRule::table1(), 3);
    const SimReport d = operating_characteristics(c, DecisionRule::table1(), 1);
    CHECK(stripped(a).dump() == stripped(b).dump());
    CHECK(stripped(a).dump() == stripped(d).dump());
    CHECK(a.mle == b.mle);
    CHECK(a.pos == b.pos);
    const SimReport e = operating_characteristics(small(-0.05, 24, 2025), DecisionRule::table1(), 1);
    CHECK(a.mle != e.mle);
}

TEST_CASE("replicate evaluation on the minimal phase 2 success dataset") {
    const SimConfig c = small(0.0, 1, 1);
    const TwoArmCounts x = TwoArmCounts::expected(0.43, 90, 0.43 + 0.014, 90);
    const ReplicateRecord r = evaluate_replicate(x, c, DecisionRule::table1());
    CHECK_FALSE(r.failed);
    CHECK_FALSE(r.flagged);
    CHECK(r.beta_mle == Approx(0.959).margin(0.005));
    CHECK(r.beta_pos == Approx(0.781).margin(0.01));
    CHECK(r.conf_pvalue == Approx(0.200).margin(0.005));
    CHECK(r.push_lo <= r.beta_mle);
    CHECK(r.push_wide_lo <= r.push_lo);
    CHECK(r.push_wide_hi >= r.push_hi);
    // rule outcomes follow the estimates
    CHECK(r.go[0] == (r.beta_pos >= 0.60));
    CHECK(r.go[3] == (r.beta_mle >= 0.80));
    CHECK(r.go[4] == (r.conf_pvalue <= 0.2));
}

TEST_CASE("degenerate draws are clamped and flagged") {
    const SimConfig c = small(0.0, 1, 1);
    const ReplicateRecord r = evaluate_replicate(TwoArmCounts{0, 90, 40, 90}, c, DecisionRule::table1());
    CHECK(r.flagged);
}

TEST_CASE("summary statistics") {
    const SampleSummary s = summarize({1, 2, 3, 4, 10}, 3);
    CHECK(s.mean == Approx(4.0));
    CHECK(s.median == Approx(3.0));
    CHECK(s.sd == Approx(std::sqrt(50.0 / 4)));
    CHECK(s.skew > 0);
    long total = 0;
    for (long k : s.bin_counts) total += k;
    CHECK(total == 5);
}

TEST_CASE("configuration validation") {
    SimConfig c = small(0.0, 10, 1);
    CHECK_NOTHROW(c.validate());
    c.true_theta = 0.6;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = small(0.0, 0, 1);
    CHECK_THROWS_AS(c.validate(), DomainError);
    CHECK_THROWS_AS((DecisionRule{RuleKind::pos_threshold, 1.5}.validate()), DomainError);
    CHECK(DecisionRule::table1().size() == 5);
}
