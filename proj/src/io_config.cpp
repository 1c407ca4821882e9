#include "pvpower/io_config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "pvpower/errors.hpp"
#include "pvpower/kernels.hpp"
#include "pvpower/special.hpp"

#ifndef PVPOWER_VERSION
#define PVPOWER_VERSION "dev"
#endif

namespace pvpower {

const char* version() { return PVPOWER_VERSION; }

EnvironmentRecord report_environment() {
    EnvironmentRecord e;
    e.version = version();
    e.special_functions = special_backend_id();
    e.prng = generator_id();
    e.simd = kernels::isa_name(kernels::active_isa());
#if defined(__VERSION__)
    e.compiler = __VERSION__;
#else
    e.compiler = "unknown";
#endif
    return e;
}

nlohmann::json to_json(const EnvironmentRecord& e) {
    return {{"version", e.version}, {"special_functions", e.special_functions}, {"prng", e.prng},
            {"simd", e.simd}, {"compiler", e.compiler}};
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string provenance_header(const std::string& kind, const std::string& extra) {
    std::string h = std::string("# pvpower ") + version() + " kind=" + kind;
    if (!extra.empty()) h += " " + extra;
    return h;
}

void write_pvfn(std::ostream& os, const PValueFunction& H) {
    const ParamGrid& g = H.grid();
    const double pe = H.has_point_estimate() ? H.point_estimate() : std::nan("");
    os << provenance_header("pvfn", "tail=" + std::string(tail_name(H.tail())) + " lo=" + fmt17(g.lo()) +
                                        " hi=" + fmt17(g.hi()) + " step=" + fmt17(g.step()) +
                                        " n=" + std::to_string(g.size()) + " point_estimate=" + fmt17(pe) +
                                        " source=" + H.source())
       << "\ntheta,value\n";
    for (std::size_t i = 0; i < H.size(); ++i) os << fmt17(g[i]) << ',' << fmt17(H[i]) << '\n';
}

void write_pvfn(const std::string& path, const PValueFunction& H) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    write_pvfn(f, H);
}

namespace {

double parse_real(const std::string& s, long line, const char* what) {
    const char* b = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(b, &end);
    if (end == b || *end != '\0') throw SchemaError(std::string("bad ") + what + " '" + s + "'", line);
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

void chomp(std::string& s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
}

}  // namespace

PValueFunction read_pvfn(std::istream& is) {
    std::string line;
    long ln = 0;
    if (!std::getline(is, line)) throw SchemaError("empty file", 1);
    ++ln;
    chomp(line);
    const std::string tag = "# pvpower ";
    if (line.rfind(tag, 0) != 0) throw SchemaError("missing provenance header", ln);
    const auto src_at = line.find(" source=");
    if (src_at == std::string::npos) throw SchemaError("header lacks source=", ln);
    const std::string source = line.substr(src_at + 8);
    std::istringstream hs(line.substr(tag.size(), src_at - tag.size()));
    std::string kind, tail, tok;
    double lo = NAN, hi = NAN, step = NAN, pe = NAN;
    long n = -1;
    hs >> tok;  // version
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw SchemaError("malformed header token '" + tok + "'", ln);
        const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
        if (k == "kind") kind = v;
        else if (k == "tail") tail = v;
        else if (k == "lo") lo = parse_real(v, ln, "lo");
        else if (k == "hi") hi = parse_real(v, ln, "hi");
        else if (k == "step") step = parse_real(v, ln, "step");
        else if (k == "n") n = std::lround(parse_real(v, ln, "n"));
        else if (k == "point_estimate") pe = parse_real(v, ln, "point_estimate");
    }
    if (kind != "pvfn") throw SchemaError("kind is '" + kind + "', expected pvfn", ln);
    if (tail != "upper" && tail != "lower") throw SchemaError("tail must be upper or lower", ln);
    if (std::isnan(lo) || std::isnan(hi) || std::isnan(step) || n < 0) throw SchemaError("grid metadata incomplete", ln);
    std::optional<ParamGrid> grid;
    try {
        grid.emplace(lo, hi, step);
    } catch (const Error& e) {
        throw SchemaError(std::string("grid metadata invalid: ") + e.what(), ln);
    }
    if (static_cast<long>(grid->size()) != n) throw SchemaError("grid metadata says n=" + std::to_string(n) +
                                                                " but lo/hi/step give " + std::to_string(grid->size()), ln);
    if (!std::getline(is, line)) throw SchemaError("missing column header", ln + 1);
    ++ln;
    chomp(line);
    if (line != "theta,value") throw SchemaError("expected column header theta,value", ln);
    std::vector<double> v;
    v.reserve(grid->size());
    while (std::getline(is, line)) {
        ++ln;
        chomp(line);
        if (line.empty()) continue;
        if (v.size() == grid->size()) throw SchemaError("more rows than grid points", ln);
        const auto f = split(line, ',');
        if (f.size() != 2) throw SchemaError("expected two columns", ln);
        const double th = parse_real(f[0], ln, "theta");
        const double expect = (*grid)[v.size()];
        if (std::fabs(th - expect) > 1e-9 * grid->step()) throw SchemaError("theta " + f[0] + " off the declared grid", ln);
        v.push_back(parse_real(f[1], ln, "value"));
    }
    if (v.size() != grid->size())
        throw SchemaError("truncated: " + std::to_string(v.size()) + " of " + std::to_string(grid->size()) + " rows", ln + 1);
    try {
        return PValueFunction(*grid, std::move(v), parse_tail(tail), source, pe);
    } catch (const Error& e) {
        throw SchemaError(e.what(), 0);
    }
}

PValueFunction read_pvfn(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SchemaError("cannot open " + path, 0);
    return read_pvfn(f);
}

void write_power_axis(std::ostream& os, const PowerAxisFunction& f) {
    os << provenance_header("power_pvfn", "tail=upper source=" + f.source()) << "\npower,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) os << fmt17(f.power()[i]) << ',' << fmt17(f.values()[i]) << '\n';
}

void write_power_curve(std::ostream& os, const PowerCurve& pc) {
    const auto& d = pc.design;
    os << provenance_header("power_curve", "n_ctrl=" + fmt17(d.n_ctrl) + " n_active=" + fmt17(d.n_active) +
                                               " theta0=" + fmt17(d.theta0) + " alpha=" + fmt17(d.alpha) +
                                               " ctrl_rate=" + fmt17(pc.ctrl_rate) + " mde=" + fmt17(pc.mde))
       << "\ntheta,power\n";
    for (std::size_t i = 0; i < pc.values.size(); ++i) os << fmt17(pc.grid[i]) << ',' << fmt17(pc.values[i]) << '\n';
}

void write_banded(std::ostream& os, const BandedPowerCurve& b) {
    os << provenance_header("banded_power_curve", "clipped=" + std::to_string(b.clipped) +
                                                      " center_mde=" + fmt17(b.center.mde))
       << "\ntheta,center,lower,upper\n";
    for (std::size_t i = 0; i < b.center.values.size(); ++i)
        os << fmt17(b.center.grid[i]) << ',' << fmt17(b.center.values[i]) << ',' << fmt17(b.lower.values[i]) << ','
           << fmt17(b.upper.values[i]) << '\n';
}

void write_curve(std::ostream& os, const ConfidenceCurve& c, const std::string& source) {
    os << provenance_header("confidence_curve", "point_estimate=" + fmt17(c.point_estimate) + " source=" + source)
       << "\ntheta,value\n";
    for (std::size_t i = 0; i < c.values.size(); ++i) os << fmt17(c.grid[i]) << ',' << fmt17(c.values[i]) << '\n';
}

void write_density(std::ostream& os, const ConfidenceDensity& d, const std::string& source) {
    os << provenance_header("confidence_density", "normalization=" + fmt17(d.normalization) + " source=" + source)
       << "\ntheta,density\n";
    for (std::size_t i = 0; i < d.values.size(); ++i) os << fmt17(d.grid[i]) << ',' << fmt17(d.values[i]) << '\n';
}

void write_table(std::ostream& os, const OperatingMatrix& m, const Table& t, const std::string& block) {
    os << provenance_header("table", "block=" + block) << "\nresult";
    for (const auto& s : m.statuses) os << ',' << s;
    os << '\n';
    for (std::size_t r = 0; r < t.size(); ++r) {
        os << m.results[r];
        for (double x : t[r]) os << ',' << fmt17(x);
        os << '\n';
    }
}

OperatingMatrix read_matrix(std::istream& is) {
    OperatingMatrix m;
    std::string line;
    long ln = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++ln;
        chomp(line);
        if (line.empty() || line[0] == '#') continue;
        auto f = split(line, ',');
        if (!header) {
            if (f.size() < 2) throw SchemaError("header needs a result column and at least one status", ln);
            m.statuses.assign(f.begin() + 1, f.end());
            header = true;
            continue;
        }
        if (f.size() != m.statuses.size() + 1) throw SchemaError("row width does not match header", ln);
        m.results.push_back(f[0]);
        std::vector<double> row;
        for (std::size_t j = 1; j < f.size(); ++j) row.push_back(parse_real(f[j], ln, "probability"));
        m.probs.push_back(std::move(row));
    }
    if (!header) throw SchemaError("empty matrix file", ln + 1);
    return m;
}

nlohmann::json to_json(const SimReport& r) {
    nlohmann::json rules = nlohmann::json::array();
    for (std::size_t k = 0; k < r.rules.size(); ++k)
        rules.push_back({{"name", r.rules[k]}, {"go_rate", r.go_rate[k]}, {"mc_se", r.mc_se[k]}});
    const auto ms = summarize(r.mle, 0), ps = summarize(r.pos, 0), gs = summarize(r.probit_mle, 0);
    return {{"scenario", r.scenario},
            {"rules", rules},
            {"go_rate", r.go_rate},
            {"mc_se", r.mc_se},
            {"coverage", {{"pushforward", r.coverage_pushforward}, {"delta", r.coverage_delta}, {"pushforward_wide", r.coverage_wide}}},
            {"true_beta3", r.true_beta3},
            {"estimators",
             {{"mle", {{"mean", ms.mean}, {"median", ms.median}, {"sd", ms.sd}}},
              {"pos", {{"mean", ps.mean}, {"median", ps.median}, {"sd", ps.sd}}},
              {"probit_mle", {{"mean", gs.mean}, {"sd", gs.sd}, {"skew", gs.skew}}}}},
            {"reps", r.reps},
            {"n_flagged", r.n_flagged},
            {"n_failed", r.n_failed},
            {"n_saturated", r.n_saturated},
            {"quality_warning", r.quality_warning},
            {"seed", r.seed},
            {"generator_id", r.generator_id},
            {"environment", to_json(report_environment())}};
}

namespace {

TrialDesign design_from_json(const nlohmann::json& j, TrialDesign d) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "n_ctrl") d.n_ctrl = it->get<double>();
        else if (k == "n_active") d.n_active = it->get<double>();
        else if (k == "theta0") d.theta0 = it->get<double>();
        else if (k == "alpha") d.alpha = it->get<double>();
        else throw SchemaError("unknown design field '" + k + "'", 0);
    }
    return d;
}

}  // namespace

SimConfig sim_config_from_json(const nlohmann::json& j, SimConfig c) {
    if (!j.is_object()) throw SchemaError("config must be a JSON object", 0);
    try {
        double lo = c.grid.lo(), hi = c.grid.hi(), step = c.grid.step();
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& k = it.key();
            if (k == "scenario") c.scenario = it->get<std::string>();
            else if (k == "true_theta") c.true_theta = it->get<double>();
            else if (k == "true_ctrl_rate") c.true_ctrl_rate = it->get<double>();
            else if (k == "phase2") c.phase2 = design_from_json(*it, c.phase2);
            else if (k == "phase3") c.phase3 = design_from_json(*it, c.phase3);
            else if (k == "reps") c.reps = it->get<long>();
            else if (k == "seed") c.seed = it->get<std::uint64_t>();
            else if (k == "interval_level") c.interval_level = it->get<double>();
            else if (k == "grid") {
                lo = it->at("lo").get<double>();
                hi = it->at("hi").get<double>();
                step = it->at("step").get<double>();
            } else throw SchemaError("unknown config field '" + k + "'", 0);
        }
        c.grid = ParamGrid(lo, hi, step);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("config: ") + e.what(), 0);
    }
    return c;
}

}  // namespace pvpower
