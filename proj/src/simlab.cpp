#include "pvpower/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include "pvpower/errors.hpp"
#include "pvpower/pos.hpp"
#include "pvpower/special.hpp"

namespace pvpower {

std::string DecisionRule::name() const {
    std::ostringstream s;
    switch (kind) {
        case RuleKind::pos_threshold: s << "PoS>=" << threshold; break;
        case RuleKind::mle_threshold: s << "MLE>=" << threshold; break;
        case RuleKind::confidence_test: s << level * 100 << "% Conf. beta3>" << beta0; break;
    }
    return s.str();
}

void DecisionRule::validate() const {
    if (!(threshold > 0 && threshold < 1)) throw DomainError("rule: threshold must be in (0,1)");
    if (kind == RuleKind::confidence_test && !(beta0 > 0 && beta0 < 1 && level > 0 && level < 1))
        throw DomainError("rule: beta0 and level must be in (0,1)");
}

std::vector<DecisionRule> DecisionRule::table1() {
    return {{RuleKind::pos_threshold, 0.60},
            {RuleKind::pos_threshold, 0.75},
            {RuleKind::pos_threshold, 0.80},
            {RuleKind::mle_threshold, 0.80},
            {RuleKind::confidence_test, 0.80, 0.5, 0.8}};
}

void SimConfig::validate() const {
    phase2.validate();
    phase3.validate();
    if (reps < 1) throw DomainError("simulation: reps must be at least 1");
    if (!(true_ctrl_rate > 0 && true_ctrl_rate < 1)) throw DomainError("simulation: true_ctrl_rate outside (0,1)");
    const double pa = true_ctrl_rate + true_theta;
    if (!(pa > 0 && pa < 1)) throw DomainError("simulation: true active rate outside (0,1)");
    for (double n : {phase2.n_ctrl, phase2.n_active})
        if (n != std::floor(n)) throw DomainError("simulation: phase 2 sample sizes must be whole numbers");
    if (!(interval_level > 0 && interval_level < 1 && wide_level > 0 && wide_level < 1))
        throw DomainError("simulation: interval levels must be in (0,1)");
}

SimConfig SimConfig::table1(double theta, long reps, std::uint64_t seed) {
    SimConfig c;
    std::ostringstream s;
    s << "theta=" << theta;
    c.scenario = s.str();
    c.true_theta = theta;
    c.reps = reps;
    c.seed = seed;
    return c;
}

const char* generator_id() {
    return "mt19937_64 seeded by seed_seq{seed.lo,seed.hi,rep.lo,rep.hi}; bernoulli-sum binomial, u=(x>>11)*2^-53; v1";
}

namespace {

std::mt19937_64 replicate_engine(std::uint64_t seed, std::uint64_t idx) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
    return std::mt19937_64(ss);
}

// std::binomial_distribution is not pinned down by the standard; this is.
double draw_binomial(std::mt19937_64& g, long n, double p) {
    long k = 0;
    for (long i = 0; i < n; ++i) {
        const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
        k += u < p;
    }
    return static_cast<double>(k);
}

bool clamp_rates(TwoArmCounts& c) {
    constexpr double e = 1e-6;
    bool hit = false;
    auto fix = [&](double& x, double n) {
        const double r = x / n;
        if (r < e) { x = e * n; hit = true; }
        else if (r > 1 - e) { x = (1 - e) * n; hit = true; }
    };
    fix(c.x_ctrl, c.n_ctrl);
    fix(c.x_active, c.n_active);
    return hit;
}

}  // namespace

TwoArmCounts simulate_phase2(const SimConfig& cfg, long idx) {
    auto g = replicate_engine(cfg.seed, static_cast<std::uint64_t>(idx));
    const long nc = std::lround(cfg.phase2.n_ctrl), na = std::lround(cfg.phase2.n_active);
    TwoArmCounts c;
    c.n_ctrl = static_cast<double>(nc);
    c.n_active = static_cast<double>(na);
    c.x_ctrl = draw_binomial(g, nc, cfg.true_ctrl_rate);
    c.x_active = draw_binomial(g, na, cfg.true_ctrl_rate + cfg.true_theta);
    return c;
}

ReplicateRecord evaluate_replicate(const TwoArmCounts& raw, const SimConfig& cfg, const std::vector<DecisionRule>& rules) {
    ReplicateRecord r;
    r.counts = raw;
    r.flagged = clamp_rates(r.counts);
    r.go.assign(rules.size(), 0);
    try {
        const TwoArmCounts& c = r.counts;
        const RateParams m = mle(c);
        r.theta_hat = m.theta;
        const PValueFunction H = upper_pvfn_lrt(c, cfg.grid);
        const PowerCurve pc3 = power_curve(cfg.phase3, m.p_ctrl, cfg.grid);
        const double t = std::clamp(m.theta, cfg.grid.lo(), cfg.grid.back());
        r.beta_mle = pc3.at(t);
        r.beta_pos = pos(H, pc3);
        const PowerAxisFunction Hb = power_pvfn(H, pc3);
        bool s1 = false, s2 = false;
        std::tie(r.push_lo, r.push_hi) = Hb.interval(cfg.interval_level, &s1);
        std::tie(r.push_wide_lo, r.push_wide_hi) = Hb.interval(cfg.wide_level, &s2);
        r.push_saturated = s1 || s2;
        const DeltaPowerInference d = delta_wald_power(c, cfg.phase3);
        std::tie(r.delta_lo, r.delta_hi) = d.interval(cfg.interval_level);
        r.probit_mle = d.g_hat;
        for (std::size_t k = 0; k < rules.size(); ++k) {
            const DecisionRule& rule = rules[k];
            switch (rule.kind) {
                case RuleKind::pos_threshold: r.go[k] = r.beta_pos >= rule.threshold; break;
                case RuleKind::mle_threshold: r.go[k] = r.beta_mle >= rule.threshold; break;
                case RuleKind::confidence_test: {
                    const double p = Hb.at(rule.beta0);
                    r.conf_pvalue = p;
                    r.go[k] = p <= 1.0 - rule.level;
                    break;
                }
            }
        }
    } catch (const Error&) {
        r.failed = true;
        std::fill(r.go.begin(), r.go.end(), 0);
    }
    return r;
}

int default_workers() {
    if (const char* e = std::getenv("PVPOWER_WORKERS")) {
        const int v = std::atoi(e);
        if (v > 0) return v;
    }
    const unsigned h = std::thread::hardware_concurrency();
    return h > 0 ? static_cast<int>(h) : 1;
}

SampleSummary summarize(const std::vector<double>& xs, int bins) {
    SampleSummary s;
    if (xs.empty()) return s;
    const double n = static_cast<double>(xs.size());
    double sum = 0;
    for (double x : xs) sum += x;
    s.mean = sum / n;
    double m2 = 0, m3 = 0;
    for (double x : xs) {
        const double d = x - s.mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    s.sd = xs.size() > 1 ? std::sqrt(m2 / (n - 1)) : 0.0;
    m2 /= n;
    m3 /= n;
    s.skew = m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
    std::vector<double> v(xs);
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    s.median = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    if (bins > 0) {
        const double lo = v.front(), hi = v.back();
        const double w = hi > lo ? (hi - lo) / bins : 1.0;
        s.bin_edges.resize(bins + 1);
        for (int b = 0; b <= bins; ++b) s.bin_edges[b] = lo + b * w;
        s.bin_counts.assign(bins, 0);
        for (double x : v) {
            int b = static_cast<int>((x - lo) / w);
            s.bin_counts[std::clamp(b, 0, bins - 1)]++;
        }
    }
    return s;
}

SimReport operating_characteristics(const SimConfig& cfg, const std::vector<DecisionRule>& rules, int workers) {
    cfg.validate();
    for (const auto& r : rules) r.validate();
    if (workers <= 0) workers = default_workers();
    workers = static_cast<int>(std::min<long>(workers, cfg.reps));

    std::vector<ReplicateRecord> rec(static_cast<std::size_t>(cfg.reps));
    auto run = [&](int w) {
        for (long i = w; i < cfg.reps; i += workers) rec[static_cast<std::size_t>(i)] = evaluate_replicate(simulate_phase2(cfg, i), cfg, rules);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }

    SimReport rep;
    rep.scenario = cfg.scenario;
    for (const auto& r : rules) rep.rules.push_back(r.name());
    rep.reps = cfg.reps;
    rep.seed = cfg.seed;
    rep.generator_id = generator_id();
    rep.true_beta3 = power_at(cfg.phase3, cfg.true_ctrl_rate, cfg.true_theta);

    // ordered reduction, so the sums do not depend on how work was split
    std::vector<long> go(rules.size(), 0);
    long ok = 0, cov_p = 0, cov_d = 0, cov_w = 0;
    for (const auto& r : rec) {
        rep.n_flagged += r.flagged;
        if (r.failed) {
            ++rep.n_failed;
            continue;
        }
        ++ok;
        rep.n_saturated += r.push_saturated;
        for (std::size_t k = 0; k < rules.size(); ++k) go[k] += r.go[k];
        cov_p += r.push_lo <= rep.true_beta3 && rep.true_beta3 <= r.push_hi;
        cov_w += r.push_wide_lo <= rep.true_beta3 && rep.true_beta3 <= r.push_wide_hi;
        cov_d += r.delta_lo <= rep.true_beta3 && rep.true_beta3 <= r.delta_hi;
        rep.mle.push_back(r.beta_mle);
        rep.pos.push_back(r.beta_pos);
        rep.probit_mle.push_back(r.probit_mle);
    }
    const double n = static_cast<double>(ok);
    for (std::size_t k = 0; k < rules.size(); ++k) {
        const double p = ok ? go[k] / n : 0.0;
        rep.go_rate.push_back(p);
        rep.mc_se.push_back(ok ? std::sqrt(p * (1 - p) / n) : 0.0);
    }
    rep.coverage_pushforward = ok ? cov_p / n : 0.0;
    rep.coverage_delta = ok ? cov_d / n : 0.0;
    rep.coverage_wide = ok ? cov_w / n : 0.0;
    rep.quality_warning = 100 * (rep.n_flagged + rep.n_failed) > cfg.reps;
    return rep;
}

CoverageRecord coverage_study(const SimConfig& cfg, int workers) {
    const SimReport r = operating_characteristics(cfg, {}, workers);
    return {cfg.interval_level, r.coverage_pushforward, r.coverage_delta, r.true_beta3};
}

EstimatorSamples estimator_sampling(const SimReport& r) {
    EstimatorSamples s;
    s.mle = r.mle;
    s.pos = r.pos;
    s.probit_mle = r.probit_mle;
    s.mle_summary = summarize(s.mle);
    s.pos_summary = summarize(s.pos);
    s.probit_summary = summarize(s.probit_mle);
    s.true_beta3 = r.true_beta3;
    return s;
}

EstimatorSamples estimator_sampling(const SimConfig& cfg, int workers) {
    return estimator_sampling(operating_characteristics(cfg, {}, workers));
}

}  // namespace pvpower
