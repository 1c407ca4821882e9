#pragma once

#include <cstddef>
#include <vector>

namespace pvpower {

// Uniform parameter grid lo, lo+step, ... up to hi (inclusive within a hair).
class ParamGrid {
public:
    ParamGrid(double lo, double hi, double step);

    static ParamGrid standard() { return ParamGrid(-0.21, 0.247, 5e-4); }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double step() const noexcept { return step_; }
    std::size_t size() const noexcept { return n_; }
    double operator[](std::size_t i) const noexcept { return lo_ + static_cast<double>(i) * step_; }
    double back() const noexcept { return (*this)[n_ - 1]; }
    std::vector<double> points() const;

    // Index of the cell [x_i, x_{i+1}) holding theta, clamped to [0, n-2].
    std::size_t cell(double theta) const noexcept;
    bool contains(double theta) const noexcept;

    bool operator==(const ParamGrid& o) const noexcept {
        return lo_ == o.lo_ && step_ == o.step_ && n_ == o.n_;
    }
    bool operator!=(const ParamGrid& o) const noexcept { return !(*this == o); }

private:
    double lo_, hi_, step_;
    std::size_t n_;
};

}  // namespace pvpower
