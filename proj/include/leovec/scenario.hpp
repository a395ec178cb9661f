#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "leovec/link.hpp"
#include "leovec/policy.hpp"

namespace leovec {

// Everything a run needs, loadable from a versioned JSON scenario file.
// Unknown keys and missing required keys are hard errors so a typo cannot
// silently fall back to a default.
struct ScenarioConfig {
  int schema_version = 1;
  uint64_t seed = 1;

  double sim_time_s = 60.0;
  double deadline_s = 0.15;

  int n_gvs = 100;
  double frame_rate_fps = 10.0;

  double load_tflop = 0.06;
  double gv_capacity_tflops = 0.5;  // 0 disables onboard processing
  double leo_capacity_tflops = 10.0;
  double packet_ul_mb = 3.0;  // Mb = 1e6 bits
  double packet_dl_mb = 0.1;

  std::string tle_path;
  int constellation_size = 0;  // 0 = whole file
  std::string start_utc;       // empty = latest TLE epoch in the roster

  double gv_center_lat_deg = 45.0;
  double gv_center_lon_deg = 11.5;
  double gv_radius_km = 50.0;

  ChannelParams channel;
  double gv_eirp_dbw = 37.2;
  double gv_g_over_t_dbk = 19.19;
  double sat_eirp_dbw = 34.9;
  double sat_g_over_t_dbk = 15.84;

  PolicyConfig policy;

  double geometry_refresh_s = 1.0;
  double min_elevation_deg = 0.0;  // 0 = plain horizon gating
  int kernel_threads = 0;          // 0 = let OpenMP decide

  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

// Parses and validates a scenario JSON document. base_dir anchors relative
// tle_path values (pass the scenario file's directory).
ScenarioConfig scenario_from_json(const nlohmann::json& doc,
                                  const std::string& base_dir);

// Full round-trip serialization: scenario_from_json(scenario_to_json(c))
// yields c again.
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

ScenarioConfig load_scenario(const std::string& path);

// Applies one `dotted.key=value` override onto a scenario JSON document.
// The value is parsed as JSON when possible and kept as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

}  // namespace leovec
