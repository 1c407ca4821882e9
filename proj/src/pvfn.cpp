#include "pvpower/pvfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pvpower/errors.hpp"
#include "pvpower/special.hpp"

namespace pvpower {

const char* tail_name(Tail t) { return t == Tail::upper ? "upper" : "lower"; }

Tail parse_tail(const std::string& s) {
    if (s == "upper") return Tail::upper;
    if (s == "lower") return Tail::lower;
    throw DomainError("unknown tail '" + s + "'");
}

PValueFunction::PValueFunction(ParamGrid grid, std::vector<double> values, Tail tail, std::string source,
                               double point_estimate)
    : grid_(grid), v_(std::move(values)), tail_(tail), source_(std::move(source)), theta_hat_(point_estimate) {
    if (v_.size() != grid_.size()) throw GridMismatchError("PValueFunction: value count does not match grid");
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (!(v_[i] >= 0.0 && v_[i] <= 1.0)) {
            std::ostringstream m;
            m << "PValueFunction: value " << v_[i] << " outside [0,1] at theta=" << grid_[i];
            throw DomainError(m.str());
        }
    }
    const double sign = tail_ == Tail::upper ? 1.0 : -1.0;
    for (std::size_t i = 1; i < v_.size(); ++i) {
        const double drop = sign * (v_[i - 1] - v_[i]);
        if (drop <= 0) continue;
        if (drop < 1e-9) {
            v_[i] = v_[i - 1];
            ++repaired_;
        } else {
            std::ostringstream m;
            m << "PValueFunction: " << tail_name(tail_) << "-tail function not monotone at theta=" << grid_[i]
              << " (step " << -sign * drop << ")";
            throw DomainError(m.str());
        }
    }
}

bool PValueFunction::has_point_estimate() const noexcept { return !std::isnan(theta_hat_); }

double PValueFunction::point_estimate() const { return has_point_estimate() ? theta_hat_ : quantile(0.5); }

double PValueFunction::min_value() const { return *std::min_element(v_.begin(), v_.end()); }
double PValueFunction::max_value() const { return *std::max_element(v_.begin(), v_.end()); }

double PValueFunction::at(double theta) const {
    if (!grid_.contains(theta)) {
        std::ostringstream m;
        m << "theta=" << theta << " outside grid [" << grid_.lo() << ", " << grid_.back() << "]";
        throw OutOfRangeError(m.str());
    }
    const std::size_t i = grid_.cell(theta);
    const double t = (theta - grid_[i]) / grid_.step();
    if (t >= 1.0) return v_[i + 1];
    return v_[i] + t * (v_[i + 1] - v_[i]);
}

double PValueFunction::quantile(double p) const {
    const double lo = min_value(), hi = max_value();
    if (!(p >= lo && p <= hi)) {
        std::ostringstream m;
        m << "quantile: p=" << p << " outside [" << lo << ", " << hi << "]";
        throw OutOfRangeError(m.str());
    }
    const bool up = tail_ == Tail::upper;
    std::size_t i = 0;
    while (i < v_.size() && (up ? v_[i] < p : v_[i] > p)) ++i;
    if (i == 0) return grid_[0];
    const double a = v_[i - 1], b = v_[i];
    return grid_[i - 1] + (p - a) / (b - a) * grid_.step();
}

std::pair<double, double> PValueFunction::interval(double level) const {
    if (!(level > 0 && level < 1)) throw DomainError("interval: level must be in (0,1)");
    const double a = 1.0 - level;
    double l = quantile(0.5 * a), u = quantile(1.0 - 0.5 * a);
    if (l > u) std::swap(l, u);
    return {l, u};
}

double ConfidenceDensity::mass() const {
    double s = 0;
    for (double v : values) s += v;
    return s * grid.step();
}

double ConfidenceDensity::mean() const {
    double s = 0, w = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += grid[i] * values[i];
        w += values[i];
    }
    if (!(w > 0)) throw DegenerateMassError("density has no mass");
    return s / w;
}

double ConfidenceDensity::variance() const {
    const double m = mean();
    double s = 0, w = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = grid[i] - m;
        s += d * d * values[i];
        w += values[i];
    }
    return s / w;
}

double lrt_upper_pvalue(const TwoArmCounts& counts, double theta0) {
    const RateParams m = mle(counts);
    const double s = lrt_statistic(counts, theta0);
    return chi1_half_tail(s, theta0 <= m.theta);
}

PValueFunction upper_pvfn_lrt(const TwoArmCounts& c, const ParamGrid& grid) {
    const RateParams m = mle(c);
    const std::vector<double> th = grid.points();
    const auto fits = restricted_ctrl_fit(c, th);
    const double l_hat = log_likelihood(c, m);
    std::vector<double> v(th.size());
    for (std::size_t i = 0; i < th.size(); ++i) {
        double s = 0.0;
        if (th[i] != m.theta) {
            s = -2.0 * (log_likelihood(c, {fits[i].p_ctrl, th[i]}) - l_hat);
            if (s < -1e-10) throw ConvergenceError("upper_pvfn_lrt: negative statistic", fits[i].p_ctrl, s);
            if (s < 0) s = 0;
        }
        v[i] = chi1_half_tail(s, th[i] <= m.theta);
    }
    std::ostringstream src;
    src.precision(10);
    src << "lrt x_ctrl=" << c.x_ctrl << " n_ctrl=" << c.n_ctrl << " x_active=" << c.x_active
        << " n_active=" << c.n_active;
    return PValueFunction(grid, std::move(v), Tail::upper, src.str(), m.theta);
}

PValueFunction upper_pvfn_wald(const TwoArmCounts& c, const ParamGrid& grid) {
    const RateParams m = mle(c);
    const double pa = m.p_active();
    const double se = std::sqrt(m.p_ctrl * (1 - m.p_ctrl) / c.n_ctrl + pa * (1 - pa) / c.n_active);
    if (!(se > 0)) throw BoundaryError("upper_pvfn_wald: zero standard error");
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = norm_sf((m.theta - grid[i]) / se);
    std::ostringstream src;
    src.precision(10);
    src << "wald identity x_ctrl=" << c.x_ctrl << " n_ctrl=" << c.n_ctrl << " x_active=" << c.x_active
        << " n_active=" << c.n_active;
    return PValueFunction(grid, std::move(v), Tail::upper, src.str(), m.theta);
}

PValueFunction lower_pvfn(const PValueFunction& H) {
    std::vector<double> v(H.values());
    for (double& x : v) x = 1.0 - x;
    const Tail t = H.tail() == Tail::upper ? Tail::lower : Tail::upper;
    return PValueFunction(H.grid(), std::move(v), t, "complement(" + H.source() + ")",
                          H.has_point_estimate() ? H.point_estimate() : std::numeric_limits<double>::quiet_NaN());
}

ConfidenceCurve confidence_curve(const PValueFunction& H) {
    const bool up = H.tail() == Tail::upper;
    const double th = H.point_estimate();
    ConfidenceCurve c{H.grid(), std::vector<double>(H.size()), 0.0};
    std::size_t best = 0;
    for (std::size_t i = 0; i < H.size(); ++i) {
        const double h = up ? H[i] : 1.0 - H[i];
        c.values[i] = H.grid()[i] <= th ? h : 1.0 - h;
        if (c.values[i] > c.values[best]) best = i;
    }
    c.point_estimate = H.grid()[best];
    return c;
}

ConfidenceDensity confidence_density(const PValueFunction& H) {
    const double sgn = H.tail() == Tail::upper ? 1.0 : -1.0;
    const double step = H.grid().step();
    ConfidenceDensity d{H.grid(), std::vector<double>(H.size(), 0.0), 0.0};
    for (std::size_t i = 1; i < H.size(); ++i) d.values[i] = sgn * (H[i] - H[i - 1]) / step;
    d.normalization = d.mass();
    return d;
}

PowerAxisFunction::PowerAxisFunction(std::vector<double> power, std::vector<double> values, std::string source)
    : b_(std::move(power)), v_(std::move(values)), source_(std::move(source)) {
    if (b_.size() != v_.size() || b_.size() < 2) throw DomainError("PowerAxisFunction: need matching columns, >= 2 rows");
    for (std::size_t i = 0; i < b_.size(); ++i) {
        if (!(b_[i] >= 0 && b_[i] <= 1) || !(v_[i] >= 0 && v_[i] <= 1))
            throw DomainError("PowerAxisFunction: entries must lie in [0,1]");
        if (i > 0 && b_[i] < b_[i - 1]) throw DomainError("PowerAxisFunction: power axis not sorted");
        if (i > 0 && v_[i] < v_[i - 1]) throw DomainError("PowerAxisFunction: values not monotone in power");
    }
}

double PowerAxisFunction::at(double beta, bool* saturated) const {
    if (saturated) *saturated = false;
    if (beta <= b_.front() || beta >= b_.back()) {
        if (beta < b_.front() || beta > b_.back()) {
            if (saturated) *saturated = true;
        }
        if (beta <= b_.front()) return v_.front();
        if (beta == b_.back()) {
            std::size_t i = b_.size() - 1;
            while (i > 0 && b_[i - 1] == beta) --i;
            return v_[i];
        }
        return v_.back();
    }
    const std::size_t i = static_cast<std::size_t>(std::lower_bound(b_.begin(), b_.end(), beta) - b_.begin());
    if (b_[i] == beta) return v_[i];
    const double t = (beta - b_[i - 1]) / (b_[i] - b_[i - 1]);
    return v_[i - 1] + t * (v_[i] - v_[i - 1]);
}

double PowerAxisFunction::quantile(double p, bool* saturated) const {
    if (saturated) *saturated = false;
    if (p < v_.front() || p > v_.back()) {
        if (saturated) *saturated = true;
        return p < v_.front() ? b_.front() : b_.back();
    }
    const std::size_t i = static_cast<std::size_t>(std::lower_bound(v_.begin(), v_.end(), p) - v_.begin());
    if (i == 0 || v_[i] == p) return b_[i];
    const double t = (p - v_[i - 1]) / (v_[i] - v_[i - 1]);
    return b_[i - 1] + t * (b_[i] - b_[i - 1]);
}

std::pair<double, double> PowerAxisFunction::interval(double level, bool* saturated) const {
    if (!(level > 0 && level < 1)) throw DomainError("interval: level must be in (0,1)");
    bool s1 = false, s2 = false;
    const double a = 1.0 - level;
    const double lo = quantile(0.5 * a, &s1), hi = quantile(1.0 - 0.5 * a, &s2);
    if (saturated) *saturated = s1 || s2;
    return {lo, hi};
}

}  // namespace pvpower
