#pragma once

#include <utility>
#include <vector>

#include "pvpower/pvfn.hpp"

namespace pvpower {

// Exact CD for an exponential mean from xbar of n draws. Returned as the upper
// function P(Xbar >= xbar | theta), which rises in theta; its density is
// Inverse-Gamma(n, n*xbar).
PValueFunction exponential_cd(double xbar, int n, const ParamGrid& grid);

struct BinomialExactCurve {
    ParamGrid grid;
    std::vector<double> ge;  // P(X >= x | theta)
    std::vector<double> le;  // P(X <= x | theta)
    ConfidenceCurve curve;   // min of the two tails
};

double binom_tail_ge(int x, int n, double theta);
double binom_tail_le(int x, int n, double theta);

BinomialExactCurve binomial_exact_curve(int x, int n, const ParamGrid& grid);

// Equal-tailed interval solving both tail equations at (1-level)/2.
std::pair<double, double> binomial_exact_interval(int x, int n, double level = 0.95);

}  // namespace pvpower
