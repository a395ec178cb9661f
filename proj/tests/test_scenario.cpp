#include <filesystem>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "leovec/scenario.hpp"

using namespace leovec;
using nlohmann::json;

namespace {

json minimal_doc() {
  return testutil::small_scenario();
}

}  // namespace

TEST_CASE("the bundled baseline scenario loads with its stated values") {
  ScenarioConfig cfg =
      load_scenario(testutil::repo_root() + "/scenarios/table1.scenario");
  CHECK(cfg.schema_version == 1);
  CHECK(cfg.seed == 1);
  CHECK(cfg.sim_time_s == 60.0);
  CHECK(cfg.deadline_s == 0.15);
  CHECK(cfg.n_gvs == 100);
  CHECK(cfg.frame_rate_fps == 10.0);
  CHECK(cfg.load_tflop == 0.06);
  CHECK(cfg.gv_capacity_tflops == 0.5);
  CHECK(cfg.leo_capacity_tflops == 20.0);
  CHECK(cfg.packet_ul_mb == 3.0);
  CHECK(cfg.packet_dl_mb == 0.1);
  CHECK(cfg.constellation_size == 0);
  CHECK(std::filesystem::path(cfg.tle_path).is_absolute());
  CHECK(std::filesystem::exists(cfg.tle_path));
  CHECK(cfg.gv_center_lat_deg == 45.0);
  CHECK(cfg.gv_center_lon_deg == 11.5);
  CHECK(cfg.gv_radius_km == 50.0);
  CHECK(cfg.channel.carrier_ghz == 30.0);
  CHECK(cfg.channel.bandwidth_hz == 1.0e7);
  CHECK(cfg.gv_eirp_dbw == 37.2);
  CHECK(cfg.sat_g_over_t_dbk == 15.84);
  CHECK(cfg.policy.selection == SelectionPolicy::MaxSnr);
  CHECK(cfg.policy.offload == OffloadPolicy::BackoffOnly);
  CHECK(cfg.policy.deadline_s == cfg.deadline_s);
  CHECK(cfg.min_elevation_deg == 50.0);
}

TEST_CASE("a missing required key is reported by name") {
  json doc = minimal_doc();
  doc.erase("deadline_s");
  try {
    scenario_from_json(doc, ".");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("deadline_s") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected by name at any level") {
  json doc = minimal_doc();
  doc["dead_line_s"] = 0.15;
  try {
    scenario_from_json(doc, ".");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("dead_line_s") != std::string::npos);
  }

  json doc2 = minimal_doc();
  doc2["policy"]["sigmma"] = 4.0;
  try {
    scenario_from_json(doc2, ".");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("sigmma") != std::string::npos);
  }
}

TEST_CASE("an unsupported schema version is rejected") {
  json doc = minimal_doc();
  doc["schema_version"] = 2;
  CHECK_THROWS_AS(scenario_from_json(doc, "."), ConfigError);
}

TEST_CASE("relative tle paths resolve against the scenario directory") {
  json doc = minimal_doc();
  doc["constellation"]["tle_path"] = "data/starlink_synth.tle";
  ScenarioConfig cfg = scenario_from_json(doc, testutil::repo_root());
  CHECK(std::filesystem::exists(cfg.tle_path));
  // Absolute paths pass through untouched.
  json doc2 = minimal_doc();
  doc2["constellation"]["tle_path"] = testutil::snapshot_path();
  ScenarioConfig cfg2 = scenario_from_json(doc2, "/nonexistent");
  CHECK(cfg2.tle_path == testutil::snapshot_path());
}

TEST_CASE("serialization round-trips every field") {
  ScenarioConfig cfg =
      load_scenario(testutil::repo_root() + "/scenarios/fig3.scenario");
  json doc = scenario_to_json(cfg);
  ScenarioConfig back = scenario_from_json(doc, "/");
  CHECK(back == cfg);
}

TEST_CASE("round-trip preserves a table loss model") {
  json doc = minimal_doc();
  doc["channel"]["gas_loss"] = json::array({json::array({10.0, 2.0}),
                                            json::array({90.0, 0.4})});
  ScenarioConfig cfg = scenario_from_json(doc, testutil::repo_root());
  CHECK(cfg.channel.gas_loss.is_table());
  CHECK(cfg.channel.gas_loss.at(50.0) == doctest::Approx(1.2).epsilon(1e-12));
  ScenarioConfig back = scenario_from_json(scenario_to_json(cfg), "/");
  CHECK(back == cfg);
}

TEST_CASE("validation rejects out-of-range values") {
  json bad = minimal_doc();
  bad["sim_time_s"] = 0.0;
  CHECK_THROWS_AS(scenario_from_json(bad, testutil::repo_root()), ConfigError);

  bad = minimal_doc();
  bad["n_gvs"] = 0;
  CHECK_THROWS_AS(scenario_from_json(bad, testutil::repo_root()), ConfigError);

  bad = minimal_doc();
  bad["frame_rate_fps"] = -10.0;
  CHECK_THROWS_AS(scenario_from_json(bad, testutil::repo_root()), ConfigError);

  bad = minimal_doc();
  bad["gvs"]["center_lat_deg"] = 95.0;
  CHECK_THROWS_AS(scenario_from_json(bad, testutil::repo_root()), ConfigError);

  bad = minimal_doc();
  bad["policy"]["selection"] = "maxsnr";
  CHECK_THROWS_AS(scenario_from_json(bad, testutil::repo_root()), ConfigError);
}

TEST_CASE("gv capacity zero is allowed and means no onboard processing") {
  json doc = minimal_doc();
  doc["gv_capacity_tflops"] = 0.0;
  ScenarioConfig cfg = scenario_from_json(doc, testutil::repo_root());
  CHECK(cfg.gv_capacity_tflops == 0.0);
}

TEST_CASE("overrides hit plain, dotted and json-typed values") {
  json doc = minimal_doc();
  apply_override(doc, "frame_rate_fps=30");
  CHECK(doc["frame_rate_fps"] == json(30));
  apply_override(doc, "policy.offload=ldboo");
  CHECK(doc["policy"]["offload"] == json("ldboo"));
  apply_override(doc, "constellation.size=2831");
  CHECK(doc["constellation"]["size"] == json(2831));
  apply_override(doc, "constellation.start_utc=2024-01-01T12:00:00Z");
  CHECK(doc["constellation"]["start_utc"] == json("2024-01-01T12:00:00Z"));

  ScenarioConfig cfg = scenario_from_json(doc, testutil::repo_root());
  CHECK(cfg.frame_rate_fps == 30.0);
  CHECK(cfg.policy.offload == OffloadPolicy::LightDropBackoff);
  CHECK(cfg.constellation_size == 2831);
}

TEST_CASE("an override without an equals sign is rejected") {
  json doc = minimal_doc();
  CHECK_THROWS_AS(apply_override(doc, "frame_rate_fps"), ConfigError);
}

TEST_CASE("loading a nonexistent scenario raises an io error") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/nope.scenario"), IoError);
}
