#pragma once

#include <json.hpp>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "subwave/asymptotics.hpp"
#include "subwave/montecarlo.hpp"
#include "subwave/subordinators.hpp"
#include "subwave/waves.hpp"

namespace subwave {

using ojson = nlohmann::ordered_json;

/// Malformed or out-of-range configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string tool_version();

/// FNV-1a 64 of the compact JSON dump, as 16 hex digits.
std::string config_hash(const ojson& config);
/// "# subwave <version> config=<hash>"
std::string header_line(const std::string& hash);

/// {"variant":"stable","alpha":..} | {"variant":"gamma","a":..,"b":..} |
/// {"variant":"distributed","weight":{"kind":"const","mu0":..} or {"kind":"power","s":..}}
SubordinatorSpec spec_from_json(const ojson& j);
ojson spec_to_json(const SubordinatorSpec& spec);

/// Shortest round-trip decimal form; used for every number written.
std::string fmt(double x);

void write_density_csv(std::ostream& os, const DensityGrid& grid, const std::string& header);
struct WaveSample {
  double t, x, value;
};
void write_wave_csv(std::ostream& os, const std::vector<WaveSample>& rows, const std::string& header);
void write_front_csv(std::ostream& os, const std::vector<FrontTrace>& traces, const std::string& header);
void write_histogram_csv(std::ostream& os, const Histogram& h, const std::string& header);

ojson to_json(const FitReport& r);
ojson to_json(const BoundReport& r);

}  // namespace subwave
