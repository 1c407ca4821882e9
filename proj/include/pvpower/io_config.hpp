#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "pvpower/design_aux.hpp"
#include "pvpower/discrete_cd.hpp"
#include "pvpower/simlab.hpp"

namespace pvpower {

const char* version();

struct EnvironmentRecord {
    std::string version, special_functions, prng, simd, compiler;
};
EnvironmentRecord report_environment();
nlohmann::json to_json(const EnvironmentRecord&);

std::string fmt17(double x);

void write_pvfn(std::ostream& os, const PValueFunction& H);
void write_pvfn(const std::string& path, const PValueFunction& H);
PValueFunction read_pvfn(std::istream& is);
PValueFunction read_pvfn(const std::string& path);

void write_power_axis(std::ostream& os, const PowerAxisFunction& f);
void write_power_curve(std::ostream& os, const PowerCurve& pc);
void write_banded(std::ostream& os, const BandedPowerCurve& b);
void write_curve(std::ostream& os, const ConfidenceCurve& c, const std::string& source);
void write_density(std::ostream& os, const ConfidenceDensity& d, const std::string& source);
void write_table(std::ostream& os, const OperatingMatrix& m, const Table& t, const std::string& block);

OperatingMatrix read_matrix(std::istream& is);

nlohmann::json to_json(const SimReport& r);
SimConfig sim_config_from_json(const nlohmann::json& j, SimConfig base = {});

// First line of every numeric file written here.
std::string provenance_header(const std::string& kind, const std::string& extra = "");

}  // namespace pvpower
