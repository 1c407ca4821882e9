#include <catch_amalgamated.hpp>

#include <cmath>

#include "pvpower/errors.hpp"
#include "pvpower/pvfn.hpp"

using namespace pvpower;
using Catch::Approx;

namespace {

const ParamGrid G = ParamGrid::standard();

// LRT upper p-value built from a brute-force profile likelihood (no fixed point involved)
double brute_upper(const TwoArmCounts& c, double th0) {
    const double pc = c.x_ctrl / c.n_ctrl, th = c.x_active / c.n_active - pc;
    double lo = feasible_lo(th0) + 1e-15, hi = feasible_hi(th0) - 1e-15;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ctrl_score(c, mid, th0) > 0 ? lo : hi) = mid;
    }
    const double s = std::max(0.0, -2.0 * (log_likelihood(c, {lo, th0}) - log_likelihood(c, {pc, th})));
    const double tail = 0.5 * std::erfc(std::sqrt(s / 2));
    return th0 <= th ? tail : 1.0 - tail;
}

}  // namespace

TEST_CASE("LRT p-value function matches a brute-force profile") {
    const TwoArmCounts c{38.7, 90, 41.2, 90};
    const PValueFunction H = upper_pvfn_lrt(c, G);
    for (std::size_t i = 0; i < G.size(); i += 37) CHECK(H[i] == Approx(brute_upper(c, G[i])).margin(1e-9));
}

TEST_CASE("p-value functions are monotone and cross one half at the estimate") {
    const TwoArmCounts c{156.95, 365, 139.1, 365};
    for (const PValueFunction& H : {upper_pvfn_lrt(c, G), upper_pvfn_wald(c, G)}) {
        for (std::size_t i = 1; i < H.size(); ++i) REQUIRE(H[i] >= H[i - 1]);
        const double th = H.point_estimate();
        CHECK(th == Approx(139.1 / 365 - 156.95 / 365).margin(1e-15));
        CHECK(H.at(th) == Approx(0.5).margin(1e-3));  // linear interpolation of a smooth curve
        CHECK(H.quantile(0.5) == Approx(th).margin(G.step()));
    }
    // a grid point placed exactly on the estimate gives exactly 0.5
    const TwoArmCounts d{40, 100, 50, 100};
    const ParamGrid g(-0.2, 0.3, 0.01);
    const PValueFunction H = upper_pvfn_lrt(d, g);
    CHECK(H.at(0.1) == Approx(0.5).margin(1e-12));
}

TEST_CASE("intervals nest as the level grows") {
    const PValueFunction H = upper_pvfn_lrt(TwoArmCounts{38.7, 90, 41.2, 90}, G);
    auto prev = H.interval(0.2);
    for (double lv : {0.4, 0.6, 0.8, 0.9}) {
        const auto cur = H.interval(lv);
        CHECK(cur.first <= prev.first);
        CHECK(cur.second >= prev.second);
        prev = cur;
    }
}

TEST_CASE("Wald function is the normal identity") {
    const TwoArmCounts c{30, 100, 40, 100};
    const PValueFunction H = upper_pvfn_wald(c, G);
    const double se = std::sqrt(0.3 * 0.7 / 100 + 0.4 * 0.6 / 100);
    for (std::size_t i = 0; i < G.size(); i += 50) CHECK(H[i] == Approx(0.5 * std::erfc((0.1 - G[i]) / se / std::sqrt(2.0))).margin(1e-14));
    // the left end of the grid sits 4.6 standard errors below the estimate
    CHECK(H[0] == Approx(0.5 * std::erfc(0.31 / se / std::sqrt(2.0))).epsilon(1e-10));
    CHECK(H[0] < 1e-5);
}

TEST_CASE("confidence curve peaks at the estimate and density integrates the increments") {
    const PValueFunction H = upper_pvfn_lrt(TwoArmCounts{38.7, 90, 41.2, 90}, G);
    const ConfidenceCurve C = confidence_curve(H);
    CHECK(C.point_estimate == Approx(H.point_estimate()).margin(G.step()));
    for (double v : C.values) CHECK(v <= 0.5 + 1e-12);
    const ConfidenceDensity h = confidence_density(H);
    CHECK(h.normalization == Approx(H[H.size() - 1] - H[0]).epsilon(1e-12));
    CHECK(h.mean() == Approx(H.point_estimate()).margin(0.005));
}

TEST_CASE("lower function is the complement with flipped tail") {
    const PValueFunction H = upper_pvfn_lrt(TwoArmCounts{38.7, 90, 41.2, 90}, G);
    const PValueFunction L = lower_pvfn(H);
    CHECK(L.tail() == Tail::lower);
    for (std::size_t i = 0; i < H.size(); i += 100) CHECK(L[i] == Approx(1 - H[i]));
}

TEST_CASE("construction rejects real monotonicity violations and repairs noise") {
    const ParamGrid g(0, 1, 0.1);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.09 * i;
    auto noisy = v;
    noisy[5] = noisy[4] - 1e-12;
    const PValueFunction ok(g, noisy, Tail::upper, "noise");
    CHECK(ok.repaired() == 1);
    auto bad = v;
    bad[5] = 0.1;
    CHECK_THROWS_AS(PValueFunction(g, bad, Tail::upper, "bad"), DomainError);
    v[3] = 1.5;
    CHECK_THROWS_AS(PValueFunction(g, v, Tail::upper, "range"), DomainError);
    CHECK_THROWS_AS(ok.at(1.5), OutOfRangeError);
    CHECK_THROWS_AS(ok.quantile(0.95), OutOfRangeError);
}

TEST_CASE("power-axis function saturates at its ends") {
    const PowerAxisFunction f({0.1, 0.5, 0.9}, {0.2, 0.5, 0.7}, "toy");
    bool sat = false;
    CHECK(f.at(0.3, &sat) == Approx(0.35));
    CHECK_FALSE(sat);
    CHECK(f.at(0.95, &sat) == 0.7);
    CHECK(sat);
    CHECK(f.quantile(0.9, &sat) == 0.9);
    CHECK(sat);
    CHECK_THROWS_AS(PowerAxisFunction({0.5, 0.1}, {0.1, 0.2}, "x"), DomainError);
}
