#include "pvpower/power.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pvpower/errors.hpp"
#include "pvpower/special.hpp"

namespace pvpower {

namespace {

TwoArmCounts design_counts(const TrialDesign& d, double pc, double m) {
    return TwoArmCounts::expected(pc, d.n_ctrl, pc + m, d.n_active);
}

void check_rate(double pc) {
    if (!(pc > 0 && pc < 1)) throw DomainError("control rate must lie in (0,1)");
}

// signed root of the LRT statistic: exactly Phi^{-1} of the upper p-value
double signed_root(const TwoArmCounts& c, double m, double theta) {
    const double s = lrt_statistic(c, theta);
    const double r = std::sqrt(s);
    return theta < m ? -r : (theta > m ? r : 0.0);
}

}  // namespace

void TrialDesign::validate() const {
    if (!(n_ctrl > 0 && std::isfinite(n_ctrl))) throw DomainError("design: n_ctrl must be positive");
    if (!(n_active > 0 && std::isfinite(n_active))) throw DomainError("design: n_active must be positive");
    if (!(alpha > 0 && alpha <= 0.5)) throw DomainError("design: alpha must be in (0, 0.5]");
    if (!(theta0 > -1 && theta0 < 1)) throw DomainError("design: theta0 outside (-1, 1)");
}

double PowerCurve::at(double theta) const {
    if (!grid.contains(theta)) {
        std::ostringstream m;
        m << "power curve: theta=" << theta << " outside grid";
        throw OutOfRangeError(m.str());
    }
    const std::size_t i = grid.cell(theta);
    const double t = (theta - grid[i]) / grid.step();
    if (t >= 1.0) return values[i + 1];
    return values[i] + t * (values[i + 1] - values[i]);
}

double PowerCurve::inverse(double beta) const {
    if (!(beta >= values.front() && beta <= values.back())) {
        std::ostringstream m;
        m << "power curve: beta=" << beta << " not reached on the grid";
        throw OutOfRangeError(m.str());
    }
    const std::size_t i = static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), beta) - values.begin());
    if (i == 0) return grid[0];
    return grid[i - 1] + (beta - values[i - 1]) / (values[i] - values[i - 1]) * grid.step();
}

PValueFunction PowerCurve::as_pvfn() const {
    std::ostringstream src;
    src << "power n_ctrl=" << design.n_ctrl << " n_active=" << design.n_active << " theta0=" << design.theta0
        << " alpha=" << design.alpha << " ctrl_rate=" << ctrl_rate << " mde=" << mde;
    return PValueFunction(grid, values, Tail::upper, src.str(), mde);
}

double mde(const TrialDesign& d, double pc) {
    d.validate();
    check_rate(pc);
    if (d.alpha == 0.5) return d.theta0;
    double lo = d.theta0;
    double hi = 1.0 - pc - 1e-9;
    if (!(pc + d.theta0 > 0 && hi > lo)) throw DomainError("mde: null margin leaves no feasible active rate");
    auto f = [&](double m) { return lrt_upper_pvalue(design_counts(d, pc, m), d.theta0); };
    if (!(f(hi) < d.alpha)) throw DomainError("mde: cannot reach the significance level inside the feasible range");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) > d.alpha) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

PowerCurve power_curve(const TrialDesign& d, double pc, const ParamGrid& grid) {
    const double m = mde(d, pc);
    PValueFunction H = upper_pvfn_lrt(design_counts(d, pc, m), grid);
    return PowerCurve{grid, H.values(), d, pc, m};
}

double power_at(const TrialDesign& d, double pc, double theta) {
    const double m = mde(d, pc);
    return lrt_upper_pvalue(design_counts(d, pc, m), theta);
}

double probit_power_at(const TrialDesign& d, double pc, double theta) {
    const double m = mde(d, pc);
    return signed_root(design_counts(d, pc, m), m, theta);
}

PowerAxisFunction power_pvfn(const PValueFunction& H, const PowerCurve& pc) {
    if (H.grid() != pc.grid) throw GridMismatchError("power_pvfn: H and power curve grids differ");
    if (H.tail() != Tail::upper) throw DomainError("power_pvfn: H must be upper-tail");
    for (std::size_t i = 1; i < pc.values.size(); ++i)
        if (pc.values[i] < pc.values[i - 1]) throw DomainError("power_pvfn: power curve is not monotone");
    std::vector<std::size_t> idx(H.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pc.values[a] < pc.values[b]; });
    std::vector<double> b(idx.size()), v(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        b[k] = pc.values[idx[k]];
        v[k] = H[idx[k]];
    }
    return PowerAxisFunction(std::move(b), std::move(v), "pushforward(" + H.source() + ")");
}

double power_point_estimate(const PowerCurve& pc, double theta_hat) { return pc.at(theta_hat); }

double DeltaPowerInference::pvalue(double beta0) const {
    if (beta0 <= 0) return 0.0;
    if (beta0 >= 1) return 1.0;
    return norm_sf((g_hat - norm_ppf(beta0)) / se);
}

std::pair<double, double> DeltaPowerInference::interval(double level) const {
    if (!(level > 0 && level < 1)) throw DomainError("interval: level must be in (0,1)");
    const double z = norm_ppf(0.5 + 0.5 * level);
    return {norm_cdf(g_hat - z * se), norm_cdf(g_hat + z * se)};
}

PowerAxisFunction DeltaPowerInference::tabulate(std::size_t points) const {
    std::vector<double> b(points), v(points);
    for (std::size_t j = 0; j < points; ++j) {
        b[j] = static_cast<double>(j + 1) / static_cast<double>(points + 1);
        v[j] = pvalue(b[j]);
    }
    std::ostringstream src;
    src << "delta probit beta_hat=" << beta_hat << " se=" << se << (clamped ? " clamped" : "");
    return PowerAxisFunction(std::move(b), std::move(v), src.str());
}

DeltaPowerInference delta_wald_power(const TwoArmCounts& x, const TrialDesign& d, double h) {
    const RateParams e = mle(x);
    const double pc = e.p_ctrl, th = e.theta, pa = e.p_active();
    if (!(pc - h > 0 && pc + h < 1)) throw BoundaryError("delta_wald_power: control rate too close to 0 or 1");
    const double var_p = pc * (1 - pc) / x.n_ctrl;
    const double var_t = pa * (1 - pa) / x.n_active + var_p;
    const double cov = -var_p;

    const double m0 = mde(d, pc);
    const TwoArmCounts c0 = design_counts(d, pc, m0);
    const double m_up = mde(d, pc + h), m_dn = mde(d, pc - h);
    DeltaPowerInference r;
    r.g_hat = signed_root(c0, m0, th);
    r.grad_theta = (signed_root(c0, m0, th + h) - signed_root(c0, m0, th - h)) / (2 * h);
    r.grad_p = (signed_root(design_counts(d, pc + h, m_up), m_up, th) -
                signed_root(design_counts(d, pc - h, m_dn), m_dn, th)) / (2 * h);
    const double var_g = r.grad_theta * r.grad_theta * var_t + r.grad_p * r.grad_p * var_p +
                         2 * r.grad_theta * r.grad_p * cov;
    if (!(var_g > 0)) throw BoundaryError("delta_wald_power: zero variance on the probit scale");
    r.se = std::sqrt(var_g);
    const double gmax = norm_ppf(1 - 1e-6);
    if (std::fabs(r.g_hat) > gmax) {
        r.g_hat = std::copysign(gmax, r.g_hat);
        r.clamped = true;
    }
    r.beta_hat = norm_cdf(r.g_hat);
    return r;
}

PowerAxisFunction delta_wald_power_pvfn(const TwoArmCounts& x, const TrialDesign& d) {
    return delta_wald_power(x, d).tabulate();
}

}  // namespace pvpower
