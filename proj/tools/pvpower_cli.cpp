// pvpower: command-line front end. Every command writes data files (CSV/JSON), never plots.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pvpower/combine.hpp"
#include "pvpower/design_aux.hpp"
#include "pvpower/discrete_cd.hpp"
#include "pvpower/errors.hpp"
#include "pvpower/exact_oracles.hpp"
#include "pvpower/io_config.hpp"
#include "pvpower/pos.hpp"
#include "pvpower/simlab.hpp"

namespace fs = std::filesystem;
using namespace pvpower;
using nlohmann::json;

namespace {

// Flag validation failure; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ParamGrid parse_grid(const std::string& s, const char* flag = "--grid") {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ':')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": cannot parse '" + part + "'");
        }
    }
    if (v.size() != 3) throw UsageError(std::string(flag) + ": expected lo:hi:step");
    try {
        return ParamGrid(v[0], v[1], v[2]);
    } catch (const Error& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

std::ofstream open_out(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw UsageError("cannot write " + p.string());
    return f;
}

void write_pvfn_file(const fs::path& p, const PValueFunction& H) {
    auto f = open_out(p);
    write_pvfn(f, H);
}

void emit(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        auto f = open_out(path);
        f << j.dump(2) << "\n";
    }
}

json interval_json(std::pair<double, double> p) { return json::array({p.first, p.second}); }

// ---- cdist ----

struct CountsFlags {
    double x_ctrl = NAN, n_ctrl = NAN, x_active = NAN, n_active = NAN;
    bool given() const { return !std::isnan(x_ctrl); }
    TwoArmCounts counts() const {
        TwoArmCounts c{x_ctrl, n_ctrl, x_active, n_active};
        try {
            c.validate();
        } catch (const Error& e) {
            throw UsageError(std::string("--x-ctrl/--n-ctrl/--x-active/--n-active: ") + e.what());
        }
        return c;
    }
};

void add_counts(CLI::App* sc, CountsFlags& c, bool required) {
    auto* a = sc->add_option("--x-ctrl", c.x_ctrl, "control events (may be fractional)");
    auto* b = sc->add_option("--n-ctrl", c.n_ctrl, "control sample size");
    auto* d = sc->add_option("--x-active", c.x_active, "active events");
    auto* e = sc->add_option("--n-active", c.n_active, "active sample size");
    if (required) {
        for (auto* o : {a, b, d, e}) o->required();
    } else {
        a->needs(b)->needs(d)->needs(e);
    }
}

struct CdistArgs {
    CountsFlags c;
    std::string test = "lrt", grid = "-0.21:0.247:0.0005", out = ".";
};

int run_cdist(const CdistArgs& a) {
    const ParamGrid g = parse_grid(a.grid);
    const TwoArmCounts c = a.c.counts();
    const fs::path dir(a.out);
    json summary;
    auto one = [&](const std::string& tag, const PValueFunction& H) {
        write_pvfn_file(dir / (tag + "_H.csv"), H);
        auto fc = open_out(dir / (tag + "_C.csv"));
        write_curve(fc, confidence_curve(H), H.source());
        auto fd = open_out(dir / (tag + "_h.csv"));
        write_density(fd, confidence_density(H), H.source());
        summary[tag] = {{"theta_hat", H.point_estimate()}};
        try {
            summary[tag]["interval95"] = interval_json(H.interval(0.95));
        } catch (const OutOfRangeError&) {
            summary[tag]["interval95"] = nullptr;
        }
    };
    std::optional<PValueFunction> lrt, wald;
    if (a.test == "lrt" || a.test == "both") one("lrt", lrt.emplace(upper_pvfn_lrt(c, g)));
    if (a.test == "wald" || a.test == "both") one("wald", wald.emplace(upper_pvfn_wald(c, g)));
    if (lrt && wald) {
        double sup = 0;
        auto f = open_out(dir / "lrt_vs_wald.csv");
        f << provenance_header("difference", "lrt minus wald") << "\ntheta,diff\n";
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double d = (*lrt)[i] - (*wald)[i];
            sup = std::max(sup, std::fabs(d));
            f << fmt17(g[i]) << ',' << fmt17(d) << '\n';
        }
        summary["sup_diff"] = sup;
    }
    emit(summary, "-");
    return 0;
}

// ---- power ----

struct PowerArgs {
    double n_ctrl = 365, n_active = 365, theta0 = -0.12, alpha = 0.025, ctrl_rate = 0.43;
    double p2_n = 90, p2_theta0 = -0.05, p2_alpha = 0.2, p2_theta_hat = NAN;
    double beta0 = 0.5, level = 0.8;
    std::string grid = "-0.21:0.247:0.0005", out = ".", pvfn, sweep;
    CountsFlags c;
    bool elicited = false, given_p2 = false, with_p2 = false;
};

TrialDesign checked(TrialDesign d, const char* flags) {
    try {
        d.validate();
    } catch (const Error& e) {
        throw UsageError(std::string(flags) + ": " + e.what());
    }
    return d;
}

PowerCurve product_curve(const PowerCurve& a, const PowerCurve& b) {
    PowerCurve p = a;
    for (std::size_t i = 0; i < p.values.size(); ++i) p.values[i] = a.values[i] * b.values[i];
    return p;
}

json power_summary(const PValueFunction& H, const PowerCurve& pc, double beta0, double level) {
    json j;
    const double th = H.point_estimate();
    j["theta_hat"] = th;
    j["mle"] = pc.grid.contains(th) ? json(power_point_estimate(pc, th)) : json(nullptr);
    const PosResult p = pos_detail(H, pc);
    j["pos"] = p.value;
    j["grid_mass"] = p.mass;
    if (p.truncated) j["warning"] = "H mass on grid below 0.99";
    const PowerAxisFunction Hb = power_pvfn(H, pc);
    j["pvalue_beta_le_beta0"] = Hb.at(beta0);
    j["beta0"] = beta0;
    bool sat = false;
    j["interval"] = interval_json(Hb.interval(level, &sat));
    j["interval_level"] = level;
    j["interval_saturated"] = sat;
    return j;
}

int run_power(const PowerArgs& a) {
    const ParamGrid g = parse_grid(a.grid);
    const fs::path dir(a.out);
    if (!(a.ctrl_rate > 0 && a.ctrl_rate < 1)) throw UsageError("--ctrl-rate must be in (0,1)");
    const TrialDesign d3 = checked({a.n_ctrl, a.n_active, a.theta0, a.alpha}, "--n-ctrl/--n-active/--theta0/--alpha");
    const TrialDesign d2 = checked({a.p2_n, a.p2_n, a.p2_theta0, a.p2_alpha}, "--p2-n/--p2-theta0/--p2-alpha");
    PowerCurve pc = [&] {
        try {
            return power_curve(d3, a.ctrl_rate, g);
        } catch (const DomainError& e) {
            throw UsageError(std::string("infeasible design: ") + e.what());
        }
    }();
    {
        auto f = open_out(dir / "power_curve.csv");
        write_power_curve(f, pc);
    }
    json out;
    out["design"] = {{"n_ctrl", d3.n_ctrl}, {"n_active", d3.n_active}, {"theta0", d3.theta0}, {"alpha", d3.alpha},
                     {"ctrl_rate", a.ctrl_rate}};
    out["mde"] = pc.mde;
    out["power_at_theta0"] = pc.at(d3.theta0);

    std::optional<PValueFunction> H;
    std::optional<TwoArmCounts> counts;
    int sources = a.c.given() + !a.pvfn.empty() + a.elicited + a.given_p2;
    if (sources > 1) throw UsageError("choose one of --x-ctrl.., --pvfn, --elicited, --given-phase2-success");
    if (a.c.given()) counts = a.c.counts();
    if (a.elicited) counts = TwoArmCounts::expected(0.43, 1200, 0.41, 350);
    if (a.given_p2) {
        const double th2 = std::isnan(a.p2_theta_hat) ? mde(d2, a.ctrl_rate) : a.p2_theta_hat;
        counts = TwoArmCounts::expected(a.ctrl_rate, d2.n_ctrl, a.ctrl_rate + th2, d2.n_active);
        out["phase2_theta_hat"] = th2;
        out["phase2_pvalue_at_theta0"] = lrt_upper_pvalue(*counts, d2.theta0);
    }
    if (counts) H.emplace(upper_pvfn_lrt(*counts, g));
    if (!a.pvfn.empty()) {
        H.emplace(read_pvfn(a.pvfn));
        if (H->grid() != g) throw UsageError("--pvfn: file grid differs from --grid");
    }
    if (H) {
        write_pvfn_file(dir / "H.csv", *H);
        out["phase3"] = power_summary(*H, pc, a.beta0, a.level);
        auto f = open_out(dir / "power_pvfn.csv");
        write_power_axis(f, power_pvfn(*H, pc));
        if (counts) {
            const DeltaPowerInference dw = delta_wald_power(*counts, d3);
            out["delta"] = {{"beta_hat", dw.beta_hat}, {"se_probit", dw.se}, {"clamped", dw.clamped},
                            {"interval", interval_json(dw.interval(a.level))}, {"pvalue_beta_le_beta0", dw.pvalue(a.beta0)}};
            auto fd = open_out(dir / "power_pvfn_delta.csv");
            write_power_axis(fd, dw.tabulate());
        }
        if (a.with_p2 || a.given_p2) {
            const PowerCurve pc2 = power_curve(d2, a.ctrl_rate, g);
            const PowerCurve both = product_curve(pc2, pc);
            auto f2 = open_out(dir / "power_curve_phase2.csv");
            write_power_curve(f2, pc2);
            auto fo = open_out(dir / "power_curve_overall.csv");
            write_power_curve(fo, both);
            auto fb = open_out(dir / "power_pvfn_phase2.csv");
            write_power_axis(fb, power_pvfn(*H, pc2));
            auto fbo = open_out(dir / "power_pvfn_overall.csv");
            write_power_axis(fbo, power_pvfn(*H, both));
            out["phase2"] = power_summary(*H, pc2, a.beta0, a.level);
            out["joint_pos"] = joint_pos(*H, pc2, pc);
            const ConfidenceDensity hc = conditional_density(*H, pc2);
            out["conditional_pos"] = conditional_pos(hc, pc);
            auto fc = open_out(dir / "conditional_density.csv");
            write_density(fc, hc, "conditional on phase 2 success");
        }
    }
    if (!a.sweep.empty()) {
        if (!H) throw UsageError("--sweep needs a p-value function (counts, --pvfn, --elicited or --given-phase2-success)");
        double n_lo = 0, n_hi = 0, n_step = 0;
        char tail = 0;
        if (std::sscanf(a.sweep.c_str(), "%lf:%lf:%lf%c", &n_lo, &n_hi, &n_step, &tail) != 3 || !(n_step > 0) ||
            !(n_lo > 0) || n_hi < n_lo)
            throw UsageError("--sweep: expected n_lo:n_hi:step with 0 < n_lo <= n_hi and step > 0");
        std::vector<double> ns;
        for (double n = n_lo; n <= n_hi + 1e-9; n += n_step) ns.push_back(n);
        auto f = open_out(dir / "sweep.csv");
        f << provenance_header("sweep", "level=" + fmt17(a.level) + " source=" + H->source())
          << "\nn,estimate,lower,upper\n";
        const double th = H->point_estimate();
        for (double nv : ns) {
            const double n = std::round(nv);
            const TrialDesign dn = checked({n, n, d3.theta0, d3.alpha}, "--sweep");
            const PowerCurve pn = power_curve(dn, a.ctrl_rate, g);
            const auto iv = power_pvfn(*H, pn).interval(a.level);
            f << fmt17(n) << ',' << fmt17(power_point_estimate(pn, th)) << ',' << fmt17(iv.first) << ','
              << fmt17(iv.second) << '\n';
        }
    }
    emit(out, "-");
    return 0;
}

// ---- combine ----

struct CombineArgs {
    std::string a, b, op = "all", out = ".", grid = "-0.21:0.247:0.0005";
    double se_a = NAN, se_b = NAN;
    bool preset = false;
};

int run_combine(const CombineArgs& a) {
    const fs::path dir(a.out);
    auto dump = [&](const std::string& tag, const PValueFunction& H) {
        write_pvfn_file(dir / (tag + "_H.csv"), H);
        auto fc = open_out(dir / (tag + "_C.csv"));
        write_curve(fc, confidence_curve(H), H.source());
        auto fd = open_out(dir / (tag + "_h.csv"));
        write_density(fd, confidence_density(H), H.source());
    };
    json out;
    if (a.preset) {
        const ParamGrid g = parse_grid(a.grid);
        const TrialDesign d2 = TrialDesign::phase2_default(), d3 = TrialDesign::phase3_default();
        const PValueFunction el = upper_pvfn_lrt(TwoArmCounts::expected(0.43, 1200, 0.41, 350), g);
        const PowerCurve pc2 = power_curve(d2, 0.43, g), pc3 = power_curve(d3, 0.43, g);
        const PValueFunction p2 = pc2.as_pvfn();
        const double se_el = diff_se(0.43, 1200, 0.41, 350);
        const double se_p2 = diff_se(0.43, 90, 0.43 + pc2.mde, 90);
        const PValueFunction mul = multiply(el, p2);
        const PValueFunction conv = convolve({el, se_el}, {p2, se_p2});
        dump("i_elicited", el);
        dump("ii_phase2", p2);
        dump("iii_multiply", mul);
        dump("iv_convolve", conv);
        auto f = open_out(dir / "v_phase3_power.csv");
        write_power_curve(f, pc3);
        for (auto [tag, H] : {std::pair{"elicited", &el}, {"phase2", &p2}, {"multiply", &mul}, {"convolve", &conv}})
            out[tag] = {{"median", H->quantile(0.5)}, {"mle_power", pc3.at(H->quantile(0.5))}, {"pos", pos(*H, pc3)}};
        out["se"] = {{"elicited", se_el}, {"phase2", se_p2}};
        emit(out, "-");
        return 0;
    }
    if (a.a.empty() || a.b.empty()) throw UsageError("--a and --b are required unless --elicitation-vs-phase2 is given");
    const PValueFunction A = read_pvfn(a.a), B = read_pvfn(a.b);
    if (A.grid() != B.grid()) throw GridMismatchError("--a and --b are on different grids");
    const bool all = a.op == "all";
    if (all || a.op == "convolve") {
        if (std::isnan(a.se_a) || std::isnan(a.se_b)) throw UsageError("--se-a and --se-b are required for convolve");
        dump("convolve", convolve({A, a.se_a}, {B, a.se_b}));
    }
    if (all || a.op == "multiply") dump("multiply", multiply(A, B));
    if (all || a.op == "or") {
        const PValueFunction o = or_combine(lower_pvfn(A), lower_pvfn(B));
        write_pvfn_file(dir / "or_Hlower.csv", o);
    }
    out["written"] = dir.string();
    emit(out, "-");
    return 0;
}

// ---- simulate ----

struct SimArgs {
    std::string config, out = "-", samples;
    bool table1 = false;
    long reps = -1;
    std::optional<std::uint64_t> seed;
    double theta = NAN;
    int workers = 0;
};

void dump_samples(const fs::path& dir, const SimReport& r) {
    std::string tag = r.scenario;
    for (char& ch : tag)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '.') ch = '_';
    auto f = open_out(dir / ("samples_" + tag + ".csv"));
    f << provenance_header("estimator_samples", "scenario=" + tag + " seed=" + std::to_string(r.seed))
      << "\nmle,pos,probit_mle\n";
    for (std::size_t i = 0; i < r.mle.size(); ++i)
        f << fmt17(r.mle[i]) << ',' << fmt17(r.pos[i]) << ',' << fmt17(r.probit_mle[i]) << '\n';
}

int run_simulate(const SimArgs& a) {
    if (!a.seed) throw UsageError("--seed is required");
    std::vector<SimConfig> cfgs;
    if (a.table1) {
        for (double th : {-0.12, -0.05, 0.0}) cfgs.push_back(SimConfig::table1(th, a.reps > 0 ? a.reps : 10000, *a.seed));
    } else {
        SimConfig c;
        if (!a.config.empty()) {
            std::ifstream f(a.config);
            if (!f) throw UsageError("--config: cannot open " + a.config);
            json j;
            try {
                f >> j;
            } catch (const json::exception& e) {
                throw SchemaError(std::string("--config: ") + e.what(), 0);
            }
            c = sim_config_from_json(j, c);
        }
        if (!std::isnan(a.theta)) c.true_theta = a.theta;
        if (a.reps > 0) c.reps = a.reps;
        c.seed = *a.seed;
        cfgs.push_back(c);
    }
    json arr = json::array();
    bool warn = false;
    for (auto& c : cfgs) {
        try {
            c.validate();
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
        const SimReport r = operating_characteristics(c, DecisionRule::table1(), a.workers);
        warn = warn || r.quality_warning;
        arr.push_back(to_json(r));
        if (!a.samples.empty()) dump_samples(a.samples, r);
    }
    emit(a.table1 ? arr : arr[0], a.out);
    if (warn) {
        std::cerr << "warning: more than 1% of replicates were clamped or failed\n";
        return 3;
    }
    return 0;
}

// ---- screen ----

struct ScreenArgs {
    std::string matrix, prior = "1:1:1", out = ".", map;
};

std::vector<double> parse_ratio(const std::string& s) {
    std::vector<double> w;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ':')) {
        try {
            w.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw UsageError("--prior: cannot parse '" + part + "'");
        }
    }
    return w;
}

int run_screen(const ScreenArgs& a) {
    OperatingMatrix m = OperatingMatrix::cancer_screening();
    if (!a.matrix.empty()) {
        std::ifstream f(a.matrix);
        if (!f) throw UsageError("--matrix: cannot open " + a.matrix);
        m = read_matrix(f);
    }
    try {
        m.validate();
    } catch (const DomainError& e) {
        throw UsageError(std::string("--matrix: ") + e.what());
    }
    const std::size_t K = m.k();
    std::vector<double> w = parse_ratio(a.prior);
    if (w.size() != K) throw UsageError("--prior: need one weight per status");
    std::vector<std::size_t> map(K);
    for (std::size_t r = 0; r < K; ++r) map[r] = r;
    const fs::path dir(a.out);
    {
        auto f = open_out(dir / "operating.csv");
        write_table(f, m, m.probs, "operating characteristics");
    }
    {
        auto f = open_out(dir / "pvalues.csv");
        f << provenance_header("table", "block=one-sided p-values (upper|lower on interior diagonal)") << "\nresult";
        for (const auto& s : m.statuses) f << ',' << s;
        f << '\n';
        const auto p = one_sided_pvalues(m);
        for (std::size_t r = 0; r < K; ++r) {
            f << m.results[r];
            for (std::size_t c = 0; c < K; ++c) {
                const PCell& x = p[r][c];
                f << ',';
                if (x.has_upper && x.has_lower) f << fmt17(x.upper) << '|' << fmt17(x.lower);
                else f << fmt17(x.has_upper ? x.upper : x.lower);
            }
            f << '\n';
        }
    }
    const auto lv = confidence_levels(m);
    json levels = json::array();
    {
        auto f = open_out(dir / "levels.csv");
        f << provenance_header("table", "block=confidence levels") << "\nresult,status,level\n";
        for (std::size_t r = 0; r < K; ++r) {
            f << m.results[r] << ',' << m.statuses[lv[r].status] << ',' << fmt17(lv[r].level) << '\n';
            levels.push_back({{"result", m.results[r]}, {"status", m.statuses[lv[r].status]}, {"level", lv[r].level}});
        }
    }
    {
        auto f = open_out(dir / "posterior.csv");
        write_table(f, m, posterior(m, w), "posterior prior=" + a.prior);
    }
    {
        auto f = open_out(dir / "likelihood.csv");
        write_table(f, m, normalized_likelihood(m), "normalized likelihood");
    }
    {
        auto f = open_out(dir / "plugin.csv");
        write_table(f, m, plugin_sampling(m, map), "plug-in sampling distribution");
    }
    emit({{"confidence_levels", levels}, {"posterior", posterior(m, w)}}, "-");
    return 0;
}

// ---- oracle ----

struct OracleArgs {
    std::string exponential, binomial, grid, out = ".";
    double level = 0.95;
};

int run_oracle(const OracleArgs& a) {
    const fs::path dir(a.out);
    json out;
    if (!a.exponential.empty()) {
        double xbar = 0;
        int n = 0;
        if (std::sscanf(a.exponential.c_str(), "%lf:%d", &xbar, &n) != 2) throw UsageError("--exponential: expected xbar:n");
        const ParamGrid g = parse_grid(a.grid.empty() ? "0.2:10:0.01" : a.grid);
        const PValueFunction H = exponential_cd(xbar, n, g);
        write_pvfn_file(dir / "exponential_H.csv", H);
        auto f = open_out(dir / "exponential_h.csv");
        write_density(f, confidence_density(H), H.source());
        out["exponential"] = {{"median", H.quantile(0.5)}};
    }
    if (!a.binomial.empty()) {
        int x = 0, n = 0;
        if (std::sscanf(a.binomial.c_str(), "%d:%d", &x, &n) != 2) throw UsageError("--binomial: expected x:n");
        const ParamGrid g = parse_grid(a.grid.empty() ? "0:1:0.001" : a.grid);
        const BinomialExactCurve b = binomial_exact_curve(x, n, g);
        auto f = open_out(dir / "binomial_curve.csv");
        f << provenance_header("binomial_exact", "x=" + std::to_string(x) + " n=" + std::to_string(n))
          << "\ntheta,p_ge,p_le,curve\n";
        for (std::size_t i = 0; i < g.size(); ++i)
            f << fmt17(g[i]) << ',' << fmt17(b.ge[i]) << ',' << fmt17(b.le[i]) << ',' << fmt17(b.curve.values[i]) << '\n';
        out["binomial"] = {{"interval", interval_json(binomial_exact_interval(x, n, a.level))}, {"level", a.level}};
    }
    if (out.is_null()) throw UsageError("give --exponential xbar:n and/or --binomial x:n");
    emit(out, "-");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-value functions and inference on the power of a future study"};
    app.set_version_flag("--version", std::string("pvpower ") + version());
    app.require_subcommand(1);

    CdistArgs ca;
    auto* cd = app.add_subcommand("cdist", "p-value function, confidence curve and density for two-arm data");
    add_counts(cd, ca.c, true);
    cd->add_option("--test", ca.test, "lrt, wald or both")->check(CLI::IsMember({"lrt", "wald", "both"}));
    cd->add_option("--grid", ca.grid, "lo:hi:step");
    cd->add_option("--out", ca.out, "output directory");

    PowerArgs pa;
    auto* pw = app.add_subcommand("power", "power curves, inference on power, PoS");
    pw->add_option("--n-per-arm", pa.n_ctrl, "phase 3 sample size per arm")->each([&](const std::string&) { pa.n_active = pa.n_ctrl; });
    pw->add_option("--theta0", pa.theta0, "phase 3 null margin");
    pw->add_option("--alpha", pa.alpha, "phase 3 one-sided level");
    pw->add_option("--ctrl-rate", pa.ctrl_rate, "plugged-in control rate");
    add_counts(pw, pa.c, false);
    pw->add_option("--pvfn", pa.pvfn, "p-value function CSV to push through the power curve");
    pw->add_flag("--elicited", pa.elicited, "use the elicitation preset (0.43 on N=1200 vs 0.41 on N=350)");
    pw->add_flag("--given-phase2-success", pa.given_p2, "condition on minimal phase 2 success");
    pw->add_flag("--with-phase2", pa.with_p2, "also emit phase 2 and overall power inference");
    pw->add_option("--p2-n", pa.p2_n, "phase 2 sample size per arm");
    pw->add_option("--p2-theta0", pa.p2_theta0, "phase 2 null margin");
    pw->add_option("--p2-alpha", pa.p2_alpha, "phase 2 one-sided level");
    pw->add_option("--phase2-theta-hat", pa.p2_theta_hat, "observed phase 2 effect (default: phase 2 MDE)");
    pw->add_option("--beta0", pa.beta0, "power null value for the reported p-value");
    pw->add_option("--level", pa.level, "two-sided level of reported power intervals");
    pw->add_option("--sweep", pa.sweep, "n_lo:n_hi:step per-arm sample sizes for phase 3");
    pw->add_option("--grid", pa.grid, "lo:hi:step");
    pw->add_option("--out", pa.out, "output directory");

    CombineArgs cb;
    auto* co = app.add_subcommand("combine", "convolve, multiply or or-combine two p-value functions");
    co->add_option("--a", cb.a, "first p-value function CSV");
    co->add_option("--b", cb.b, "second p-value function CSV");
    co->add_option("--se-a", cb.se_a, "standard error weight of --a");
    co->add_option("--se-b", cb.se_b, "standard error weight of --b");
    co->add_option("--op", cb.op, "convolve, multiply, or, all")->check(CLI::IsMember({"convolve", "multiply", "or", "all"}));
    co->add_flag("--elicitation-vs-phase2", cb.preset, "regenerate the elicitation vs phase 2 combination curves");
    co->add_option("--grid", cb.grid, "lo:hi:step (with --elicitation-vs-phase2)");
    co->add_option("--out", cb.out, "output directory");

    SimArgs sa;
    auto* si = app.add_subcommand("simulate", "Monte Carlo operating characteristics of Go/No-Go rules");
    si->add_option("--config", sa.config, "scenario JSON");
    si->add_flag("--table1", sa.table1, "run the three standard scenarios");
    si->add_option("--theta", sa.theta, "true treatment effect");
    si->add_option("--reps", sa.reps, "replicates per scenario");
    si->add_option("--seed", sa.seed, "RNG seed");
    si->add_option("--workers", sa.workers, "worker threads (default PVPOWER_WORKERS or all cores)");
    si->add_option("--out", sa.out, "report JSON path ('-' for stdout)");
    si->add_option("--samples", sa.samples, "directory for raw estimator samples");

    ScreenArgs sc;
    auto* sr = app.add_subcommand("screen", "discrete-status confidence tables from an operating matrix");
    sr->add_option("--matrix", sc.matrix, "K x K CSV (header: result,status...)");
    sr->add_option("--prior", sc.prior, "prior weights, e.g. 4:2:1");
    sr->add_option("--out", sc.out, "output directory");

    OracleArgs oa;
    auto* orc = app.add_subcommand("oracle", "exact confidence distributions");
    orc->add_option("--exponential", oa.exponential, "xbar:n");
    orc->add_option("--binomial", oa.binomial, "x:n");
    orc->add_option("--level", oa.level, "interval level for --binomial");
    orc->add_option("--grid", oa.grid, "lo:hi:step");
    orc->add_option("--out", oa.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*cd) return run_cdist(ca);
        if (*pw) return run_power(pa);
        if (*co) return run_combine(cb);
        if (*si) return run_simulate(sa);
        if (*sr) return run_screen(sc);
        if (*orc) return run_oracle(oa);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GridMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
