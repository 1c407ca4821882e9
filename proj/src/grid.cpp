#include "pvpower/grid.hpp"

#include <cmath>

#include "pvpower/errors.hpp"

namespace pvpower {

ParamGrid::ParamGrid(double lo, double hi, double step) : lo_(lo), hi_(hi), step_(step) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && std::isfinite(step)))
        throw DomainError("grid: non-finite bound");
    if (!(step > 0)) throw DomainError("grid: step must be positive");
    if (!(lo < hi)) throw DomainError("grid: lo must be below hi");
    const double span = (hi - lo) / step;
    if (span < 10.0 - 1e-9) throw DomainError("grid: fewer than 10 steps between lo and hi");
    n_ = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
}

std::vector<double> ParamGrid::points() const {
    std::vector<double> v(n_);
    for (std::size_t i = 0; i < n_; ++i) v[i] = (*this)[i];
    return v;
}

std::size_t ParamGrid::cell(double theta) const noexcept {
    double u = std::floor((theta - lo_) / step_);
    if (!(u > 0)) return 0;
    std::size_t i = static_cast<std::size_t>(u);
    if (i > n_ - 2) i = n_ - 2;
    // floor can land one cell off when theta sits on a point
    while (i > 0 && (*this)[i] > theta) --i;
    while (i + 2 < n_ && (*this)[i + 1] <= theta) ++i;
    return i;
}

bool ParamGrid::contains(double theta) const noexcept {
    const double eps = 1e-12 * step_;
    return theta >= lo_ - eps && theta <= back() + eps;
}

}  // namespace pvpower
