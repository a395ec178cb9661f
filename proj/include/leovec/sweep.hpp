#pragma once

// ---------------------------------------------------------------------------
// Parameter sweeps: a Cartesian grid of scenario overrides, each cell run for
// every seed.  Cells are independent simulations, so they execute on a worker
// pool; results are flushed to disk in cell order as soon as a cell (and all
// cells before it) finish, which keeps the output invariant to the
// parallelism degree and leaves exactly the completed prefix behind if the
// process dies mid-sweep.
// ---------------------------------------------------------------------------

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "leovec/engine.hpp"

namespace leovec {

struct SweepAxis {
  std::string key;                    // dotted scenario key
  std::vector<nlohmann::json> values;
};

// Parses "key=v1,v2,v3"; each value is JSON if it parses, a string otherwise.
SweepAxis parse_axis(const std::string& spec);

struct SweepOptions {
  std::vector<SweepAxis> axes;     // first axis varies slowest
  std::vector<std::uint64_t> seeds;
  int jobs = 1;
  std::string out_dir = ".";
  bool write_summaries = true;  // per-run summary JSONs for `report`
};

struct SweepRun {
  std::vector<nlohmann::json> cell;  // one value per axis
  std::uint64_t seed = 0;
  double p_rt = 0.0, p_d = 0.0, rho = 0.0, median_t_d = NAN;
};

struct SweepResult {
  std::vector<SweepRun> runs;  // cell-major, then seed order
  std::string long_csv_path;
  std::string pivot_csv_path;  // empty unless the grid has exactly two axes
};

// Runs the sweep over base_doc (a scenario JSON document; base_dir anchors
// its relative tle_path).  Writes <out>/sweep_long.csv incrementally, plus
// <out>/sweep_pivot.csv (median real-time probability across seeds, first
// axis as rows) when the grid is two-dimensional.
SweepResult run_sweep(const nlohmann::json& base_doc,
                      const std::string& base_dir, const SweepOptions& opt);

}  // namespace leovec
