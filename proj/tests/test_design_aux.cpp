#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "pvpower/design_aux.hpp"
#include "pvpower/errors.hpp"

using namespace pvpower;
using Catch::Approx;

TEST_CASE("effective sample size inverts the binomial variance of a difference") {
    // variance that a real 350-patient active arm against 1200 controls would produce
    const double pa = 0.41, pc = 0.43;
    const double v = pa * (1 - pa) / 350 + pc * (1 - pc) / 1200;
    CHECK(effective_n_active({-0.02, v, pc, 1200}) == Approx(350).epsilon(1e-12));
    // infinite control information leaves only the active term
    CHECK(effective_n_active({-0.02, v, pc, std::numeric_limits<double>::infinity()}) ==
          Approx(pa * (1 - pa) / v));
    // monotone in var_diff and n_ctrl
    CHECK(effective_n_active({-0.02, 1.1 * v, pc, 1200}) < 350);
    CHECK(effective_n_active({-0.02, v, pc, 2400}) < 350);
    CHECK(effective_n_active({-0.02, v, pc, 1000}) > 350);
    CHECK_THROWS_AS(effective_n_active({-0.02, 1e-6, pc, 1200}), DomainError);
}

TEST_CASE("extrapolation band: zero shift is the identity and the band is ordered") {
    const ParamGrid g = ParamGrid::standard();
    const PowerCurve pc = power_curve(TrialDesign::phase3_default(), 0.43, g);
    const BandedPowerCurve z = extrapolated_power_curve(pc, {0, 0, 0});
    for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(z.center.values[i] == pc.values[i]);
    CHECK(z.clipped == 0);

    const BandedPowerCurve b = extrapolated_power_curve(pc, {0.01, -0.01, 0.03});
    for (std::size_t i = 0; i < g.size(); ++i) {
        REQUIRE(b.lower.values[i] <= b.center.values[i] + 1e-12);
        REQUIRE(b.center.values[i] <= b.upper.values[i] + 1e-12);
    }
    // shifting by delta moves the curve right: beta_shifted(theta) = beta(theta - delta)
    CHECK(b.center.at(0.0) == Approx(pc.at(-0.01)).margin(1e-12));
    CHECK(b.clipped > 0);
    CHECK_THROWS_AS(extrapolated_power_curve(pc, {0.0, 0.01, 0.02}), DomainError);
    CHECK_THROWS_AS(extrapolated_power_curve(pc, {5, 5, 5}), DomainError);
}

TEST_CASE("banded pushforward keeps the H values") {
    const ParamGrid g = ParamGrid::standard();
    const PowerCurve pc = power_curve(TrialDesign::phase3_default(), 0.43, g);
    const PValueFunction H = upper_pvfn_lrt(TwoArmCounts{38.7, 90, 41.2, 90}, g);
    const BandedPowerAxis ax = extrapolated_power_pvfn(H, pc, {0.01, -0.01, 0.03});
    CHECK(ax.center.size() == g.size());
    CHECK(ax.lower.values().back() == Approx(H.max_value()));
}
