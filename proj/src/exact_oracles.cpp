#include "pvpower/exact_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pvpower/errors.hpp"
#include "pvpower/special.hpp"

namespace pvpower {

PValueFunction exponential_cd(double xbar, int n, const ParamGrid& grid) {
    if (!(xbar > 0)) throw DomainError("exponential_cd: xbar must be positive");
    if (n < 1) throw DomainError("exponential_cd: n must be at least 1");
    if (!(grid.lo() > 0)) throw DomainError("exponential_cd: grid must lie in theta > 0");
    std::vector<double> v(grid.size());
    // Xbar ~ Gamma(n, scale theta/n), so P(Xbar >= xbar) = Q(n, n*xbar/theta)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = gamma_q(n, n * xbar / grid[i]);
    std::ostringstream src;
    src << "exponential xbar=" << xbar << " n=" << n;
    return PValueFunction(grid, std::move(v), Tail::upper, src.str());
}

namespace {

double log_pmf(int k, int n, double lt, double l1t) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * lt + (n - k) * l1t;
}

// sum of pmf over k in [a, b], accumulated in log space
double pmf_range(int a, int b, int n, double theta) {
    if (a > b) return 0.0;
    if (theta <= 0) return a == 0 ? 1.0 : 0.0;
    if (theta >= 1) return b == n ? 1.0 : 0.0;
    const double lt = std::log(theta), l1t = std::log1p(-theta);
    double mx = -HUGE_VAL;
    for (int k = a; k <= b; ++k) mx = std::max(mx, log_pmf(k, n, lt, l1t));
    double s = 0;
    for (int k = a; k <= b; ++k) s += std::exp(log_pmf(k, n, lt, l1t) - mx);
    return std::min(1.0, std::exp(mx) * s);
}

void check_xn(int x, int n) {
    if (n < 1 || x < 0 || x > n) throw DomainError("binomial: need 0 <= x <= n, n >= 1");
}

// increasing f on [0,1]; returns theta with f(theta) = target
template <class F>
double solve_increasing(F f, double target) {
    double lo = 0, hi = 1;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < target) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double binom_tail_ge(int x, int n, double theta) {
    check_xn(x, n);
    // use the shorter side of the sum
    if (x > n / 2) return pmf_range(x, n, n, theta);
    return std::max(0.0, 1.0 - pmf_range(0, x - 1, n, theta));
}

double binom_tail_le(int x, int n, double theta) {
    check_xn(x, n);
    if (x < n / 2) return pmf_range(0, x, n, theta);
    return std::max(0.0, 1.0 - pmf_range(x + 1, n, n, theta));
}

BinomialExactCurve binomial_exact_curve(int x, int n, const ParamGrid& grid) {
    check_xn(x, n);
    if (grid.lo() < 0 || grid.back() > 1) throw DomainError("binomial_exact_curve: grid must lie in [0,1]");
    BinomialExactCurve b{grid, std::vector<double>(grid.size()), std::vector<double>(grid.size()),
                         ConfidenceCurve{grid, std::vector<double>(grid.size()), 0.0}};
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        b.ge[i] = binom_tail_ge(x, n, grid[i]);
        b.le[i] = binom_tail_le(x, n, grid[i]);
        b.curve.values[i] = std::min(b.ge[i], b.le[i]);
        if (b.curve.values[i] > b.curve.values[best]) best = i;
    }
    b.curve.point_estimate = grid[best];
    return b;
}

std::pair<double, double> binomial_exact_interval(int x, int n, double level) {
    check_xn(x, n);
    if (!(level > 0 && level < 1)) throw DomainError("binomial_exact_interval: level must be in (0,1)");
    const double a = 0.5 * (1 - level);
    const double lo = x == 0 ? 0.0 : solve_increasing([&](double t) { return binom_tail_ge(x, n, t); }, a);
    const double hi = x == n ? 1.0 : solve_increasing([&](double t) { return -binom_tail_le(x, n, t); }, -a);
    return {lo, hi};
}

}  // namespace pvpower
