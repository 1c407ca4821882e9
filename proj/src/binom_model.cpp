#include "pvpower/binom_model.hpp"

#include <cmath>
#include <sstream>

#include "pvpower/errors.hpp"
#include "pvpower/kernels.hpp"

namespace pvpower {

namespace {

// coefficient * log(arg), with the 0*log(0) = 0 convention
double xlogy(double coef, double arg) {
    if (coef == 0.0) return 0.0;
    if (!(arg > 0.0)) {
        std::ostringstream m;
        m << "log_likelihood: log argument " << arg << " with coefficient " << coef;
        throw DomainError(m.str());
    }
    return coef * std::log(arg);
}

double score_slope(const TwoArmCounts& c, double p, double th) {
    const double a = p + th, b = 1.0 - p - th;
    double s = 0.0;
    if (c.x_ctrl > 0) s -= c.x_ctrl / (p * p);
    if (c.n_ctrl > c.x_ctrl) s -= (c.n_ctrl - c.x_ctrl) / ((1.0 - p) * (1.0 - p));
    if (c.x_active > 0) s -= c.x_active / (a * a);
    if (c.n_active > c.x_active) s -= (c.n_active - c.x_active) / (b * b);
    return s;
}

// Score is strictly decreasing in p, so a sign-bracketed Newton/bisection hybrid is safe.
double bracketed_root(const TwoArmCounts& c, double th, double lo, double hi) {
    double a = lo, b = hi;
    double x = 0.5 * (a + b);
    for (int it = 0; it < 400; ++it) {
        const double s = ctrl_score(c, x, th);
        if (s == 0.0) return x;
        if (s > 0) a = x; else b = x;
        const double slope = score_slope(c, x, th);
        double nx = x - s / slope;
        if (!(nx > a && nx < b)) nx = 0.5 * (a + b);
        if (std::fabs(nx - x) <= 1e-17 + 1e-16 * std::fabs(x)) return nx;
        x = nx;
    }
    return x;
}

RestrictedFit finish(const TwoArmCounts& c, double th, double p, int iters, int status) {
    const double lo = feasible_lo(th), hi = feasible_hi(th);
    double r = status == 2 ? HUGE_VAL : std::fabs(ctrl_score(c, p, th));
    // A linear fixed point can stop at |dp| < tol while the score is still a little off;
    // a couple of Newton steps close the gap.
    for (int k = 0; k < 3 && status != 2 && r > 0.0; ++k) {
        const double np = p - ctrl_score(c, p, th) / score_slope(c, p, th);
        if (!(np > lo && np < hi)) break;
        const double nr = std::fabs(ctrl_score(c, np, th));
        if (!(nr < r)) break;
        p = np;
        r = nr;
    }
    if (!(r < kScoreTol)) {
        const double s_lo = ctrl_score(c, std::nextafter(lo, hi), th);
        const double s_hi = ctrl_score(c, std::nextafter(hi, lo), th);
        if (s_lo > 0 && s_hi < 0) {
            p = bracketed_root(c, th, lo, hi);
            r = std::fabs(ctrl_score(c, p, th));
        }
    }
    if (!(r < kScoreTol)) {
        std::ostringstream m;
        m << "restricted_ctrl_mle: no interior solution at theta0=" << th << " (|score|=" << r << ")";
        throw ConvergenceError(m.str(), p, r);
    }
    return {p, r, iters};
}

void check_theta0(double theta0) {
    if (!(theta0 > -1.0 && theta0 < 1.0)) {
        std::ostringstream m;
        m << "theta0=" << theta0 << " admits no feasible control rate";
        throw DomainError(m.str());
    }
}

}  // namespace

void TwoArmCounts::validate() const {
    auto bad = [](const char* what) { throw DomainError(std::string("TwoArmCounts: ") + what); };
    if (!(std::isfinite(x_ctrl) && std::isfinite(n_ctrl) && std::isfinite(x_active) && std::isfinite(n_active)))
        bad("non-finite value");
    if (!(n_ctrl > 0)) bad("n_ctrl must be positive");
    if (!(n_active >= 0)) bad("n_active must be nonnegative");
    if (!(x_ctrl >= 0 && x_ctrl <= n_ctrl)) bad("x_ctrl outside [0, n_ctrl]");
    if (!(x_active >= 0 && x_active <= n_active)) bad("x_active outside [0, n_active]");
}

TwoArmCounts TwoArmCounts::expected(double p_ctrl, double n_ctrl, double p_active, double n_active) {
    TwoArmCounts c{p_ctrl * n_ctrl, n_ctrl, p_active * n_active, n_active};
    c.validate();
    return c;
}

void RateParams::validate() const {
    if (!(p_ctrl > 0 && p_ctrl < 1)) throw DomainError("RateParams: p_ctrl outside (0,1)");
    const double pa = p_active();
    if (!(pa > 0 && pa < 1)) throw DomainError("RateParams: p_ctrl + theta outside (0,1)");
}

double feasible_lo(double theta0) noexcept { return theta0 < 0 ? -theta0 : 0.0; }
double feasible_hi(double theta0) noexcept { return theta0 > 0 ? 1.0 - theta0 : 1.0; }

double log_likelihood(const TwoArmCounts& c, const RateParams& p) {
    const double pa = p.p_active();
    return xlogy(c.x_ctrl, p.p_ctrl) + xlogy(c.n_ctrl - c.x_ctrl, 1.0 - p.p_ctrl) +
           xlogy(c.x_active, pa) + xlogy(c.n_active - c.x_active, 1.0 - pa);
}

double ctrl_score(const TwoArmCounts& c, double p, double th) {
    double s = 0.0;
    if (c.x_ctrl > 0) s += c.x_ctrl / p;
    if (c.n_ctrl > c.x_ctrl) s -= (c.n_ctrl - c.x_ctrl) / (1.0 - p);
    if (c.x_active > 0) s += c.x_active / (p + th);
    if (c.n_active > c.x_active) s -= (c.n_active - c.x_active) / (1.0 - p - th);
    return s;
}

RateParams mle(const TwoArmCounts& c) {
    c.validate();
    if (!(c.x_ctrl > 0 && c.x_ctrl < c.n_ctrl))
        throw BoundaryError("mle: control rate estimate is 0 or 1");
    if (!(c.n_active > 0 && c.x_active > 0 && c.x_active < c.n_active))
        throw BoundaryError("mle: active rate estimate is 0 or 1");
    const double pc = c.x_ctrl / c.n_ctrl;
    return {pc, c.x_active / c.n_active - pc};
}

std::vector<RestrictedFit> restricted_ctrl_fit(const TwoArmCounts& c, const std::vector<double>& theta0) {
    c.validate();
    for (double t : theta0) check_theta0(t);
    std::vector<RestrictedFit> out(theta0.size());
    if (c.n_active == 0) {
        for (auto& f : out) f = {c.x_ctrl / c.n_ctrl, 0.0, 0};
        return out;
    }
    std::vector<double> p(theta0.size());
    std::vector<int> it(theta0.size()), st(theta0.size());
    kernels::SweepArgs a{c.x_ctrl, c.n_ctrl, c.x_active, c.n_active, theta0.data(), theta0.size(), 1e-12, kMaxFixedPoint};
    kernels::restricted_sweep(a, p.data(), it.data(), st.data());
    for (std::size_t i = 0; i < theta0.size(); ++i) out[i] = finish(c, theta0[i], p[i], it[i], st[i]);
    return out;
}

RestrictedFit restricted_ctrl_fit(const TwoArmCounts& c, double theta0) {
    return restricted_ctrl_fit(c, std::vector<double>{theta0}).front();
}

double restricted_ctrl_mle(const TwoArmCounts& c, double theta0) { return restricted_ctrl_fit(c, theta0).p_ctrl; }

double lrt_statistic(const TwoArmCounts& c, double theta0) {
    c.validate();
    check_theta0(theta0);
    const double pc = c.x_ctrl / c.n_ctrl;
    const double th = c.n_active > 0 ? c.x_active / c.n_active - pc : 0.0;
    if (theta0 == th || c.n_active == 0) return 0.0;
    const double p0 = restricted_ctrl_mle(c, theta0);
    const double s = -2.0 * (log_likelihood(c, {p0, theta0}) - log_likelihood(c, {pc, th}));
    if (s < -1e-10) throw ConvergenceError("lrt_statistic: restricted fit beats the unrestricted one", p0, s);
    return s < 0 ? 0.0 : s;
}

double wald_z(const TwoArmCounts& c, double theta0) {
    const RateParams m = mle(c);
    const double pa = m.p_active();
    const double se = std::sqrt(m.p_ctrl * (1 - m.p_ctrl) / c.n_ctrl + pa * (1 - pa) / c.n_active);
    if (!(se > 0)) throw BoundaryError("wald_z: zero standard error");
    return (m.theta - theta0) / se;
}

}  // namespace pvpower
