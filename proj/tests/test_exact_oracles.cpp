#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/inverse_gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "pvpower/errors.hpp"
#include "pvpower/exact_oracles.hpp"

using namespace pvpower;
using Catch::Approx;

TEST_CASE("exponential CD density is the Inverse-Gamma(n, n*xbar) density") {
    const ParamGrid g(0.2, 10, 5e-4);
    const PValueFunction H = exponential_cd(1.5, 5, g);
    const ConfidenceDensity h = confidence_density(H);
    const boost::math::inverse_gamma_distribution<> ig(5, 7.5);
    double sup = 0;
    // the lag density at i belongs to the cell (x_{i-1}, x_i]; compare at its midpoint
    for (std::size_t i = 1; i < g.size(); ++i)
        sup = std::max(sup, std::fabs(h.values[i] - boost::math::pdf(ig, g[i] - 0.5 * g.step())));
    CHECK(sup < 1e-6);
    for (std::size_t i = 1; i < g.size(); ++i) REQUIRE(H[i] > H[i - 1]);
}

TEST_CASE("exponential CD crosses one half at the root of the gamma median equation") {
    const ParamGrid g(0.2, 10, 1e-3);
    const PValueFunction H = exponential_cd(1.5, 5, g);
    // independent bracketed root of Q(5, 7.5/theta) = 0.5 using the inverse-gamma CDF
    const boost::math::inverse_gamma_distribution<> ig(5, 7.5);
    auto f = [&](double t) { return boost::math::cdf(ig, t) - 0.5; };
    std::uintmax_t it = 200;
    const auto r = boost::math::tools::bisect(f, 0.2, 10.0, boost::math::tools::eps_tolerance<double>(50), it);
    CHECK(H.quantile(0.5) == Approx(0.5 * (r.first + r.second)).margin(1e-6));
}

TEST_CASE("exponential CD with one draw is the exponential survival in closed form") {
    const ParamGrid g(0.2, 10, 0.01);
    const PValueFunction H = exponential_cd(1.5, 1, g);
    // P(X >= xbar | theta) for an exponential with mean theta
    for (std::size_t i = 0; i < g.size(); i += 13) CHECK(H[i] == Approx(std::exp(-1.5 / g[i])).margin(1e-14));
}

TEST_CASE("binomial exact interval matches Clopper-Pearson beta quantiles") {
    using boost::math::beta_distribution;
    const int n = 20;
    for (int x : {1, 5, 10, 19}) {
        const auto iv = binomial_exact_interval(x, n, 0.95);
        const double lo = boost::math::quantile(beta_distribution<>(x, n - x + 1), 0.025);
        const double hi = boost::math::quantile(beta_distribution<>(x + 1, n - x), 0.975);
        CHECK(iv.first == Approx(lo).margin(1e-8));
        CHECK(iv.second == Approx(hi).margin(1e-8));
    }
    CHECK(binomial_exact_interval(0, n).first == 0.0);
    CHECK(binomial_exact_interval(n, n).second == 1.0);
}

TEST_CASE("exact interval is wider than Beta-posterior credible intervals") {
    using boost::math::beta_distribution;
    const int x = 19, n = 20;
    const auto iv = binomial_exact_interval(x, n);
    for (double a : {1.0, 0.1}) {
        const beta_distribution<> post(x + a, n - x + a);
        const double w = boost::math::quantile(post, 0.975) - boost::math::quantile(post, 0.025);
        CHECK(iv.second - iv.first > w);
    }
}

TEST_CASE("binomial tails are monotone and sum past one") {
    const ParamGrid g(0, 1, 0.001);
    const BinomialExactCurve b = binomial_exact_curve(7, 20, g);
    for (std::size_t i = 1; i < g.size(); ++i) {
        REQUIRE(b.ge[i] >= b.ge[i - 1]);
        REQUIRE(b.le[i] <= b.le[i - 1]);
    }
    for (std::size_t i = 0; i < g.size(); i += 50) CHECK(b.ge[i] + b.le[i] >= 1.0 - 1e-12);
    CHECK(b.curve.point_estimate == Approx(0.35).margin(0.02));
    CHECK_THROWS_AS(binomial_exact_curve(21, 20, g), DomainError);
}
