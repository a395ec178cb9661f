#pragma once

// Shared plumbing for the test suite: locating the repo (ctest exports
// LEOVEC_ROOT; falling back to the parent dir covers running the binary from
// build/ by hand), temp dirs, and a small baseline scenario document.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace testutil {

inline std::string repo_root() {
  if (const char* env = std::getenv("LEOVEC_ROOT")) return env;
  namespace fs = std::filesystem;
  for (const char* candidate : {".", ".."})
    if (fs::exists(fs::path(candidate) / "data" / "starlink_synth.tle"))
      return candidate;
  return ".";
}

inline std::string snapshot_path() {
  return (std::filesystem::path(repo_root()) / "data" / "starlink_synth.tle")
      .string();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::filesystem::create_directories(
      std::filesystem::path(path).parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

inline std::string fresh_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("leovec_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

// A fast scenario: 300-satellite subset, 10 GVs, 10 s.  Tests override what
// they care about.
inline nlohmann::json small_scenario() {
  return nlohmann::json{
      {"schema_version", 1},
      {"seed", 1},
      {"sim_time_s", 10.0},
      {"deadline_s", 0.15},
      {"n_gvs", 10},
      {"frame_rate_fps", 10.0},
      {"load_tflop", 0.06},
      {"gv_capacity_tflops", 0.5},
      {"leo_capacity_tflops", 20.0},
      {"packet_ul_mb", 3.0},
      {"packet_dl_mb", 0.1},
      {"constellation", {{"tle_path", snapshot_path()}, {"size", 0}}},
      {"gvs",
       {{"center_lat_deg", 45.0}, {"center_lon_deg", 11.5},
        {"radius_km", 50.0}}},
      {"policy", {{"selection", "ms"}, {"offload", "boo"}}},
      {"min_elevation_deg", 50.0},
  };
}

}  // namespace testutil
