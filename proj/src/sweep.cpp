#include "leovec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "leovec/scenario.hpp"

namespace leovec {

using nlohmann::json;

namespace {

// Round-trip formatting so a consumer parsing the CSV recovers the exact
// doubles the summary JSONs carry.
std::string fmt17(double v) {
  if (std::isnan(v)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string value_str(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

struct CellOutcome {
  std::vector<SweepRun> runs;
  std::exception_ptr error;
  bool done = false;
};

}  // namespace

SweepAxis parse_axis(const std::string& spec) {
  size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size())
    throw ConfigError("axis must look like key=v1,v2,..., got '" + spec + "'");
  SweepAxis axis;
  axis.key = spec.substr(0, eq);
  std::string rest = spec.substr(eq + 1);
  size_t pos = 0;
  while (pos <= rest.size()) {
    size_t comma = rest.find(',', pos);
    std::string item = rest.substr(pos, comma - pos);
    if (item.empty())
      throw ConfigError("axis '" + axis.key + "' has an empty value");
    try {
      axis.values.push_back(json::parse(item));
    } catch (const json::parse_error&) {
      axis.values.push_back(json(item));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (axis.values.empty())
    throw ConfigError("axis '" + axis.key + "' has no values");
  return axis;
}

SweepResult run_sweep(const json& base_doc, const std::string& base_dir,
                      const SweepOptions& opt) {
  if (opt.axes.empty()) throw ConfigError("sweep needs at least one --axis");
  if (opt.seeds.empty()) throw ConfigError("sweep needs at least one seed");

  size_t n_cells = 1;
  for (const SweepAxis& a : opt.axes) n_cells *= a.values.size();

  std::filesystem::create_directories(opt.out_dir);
  std::filesystem::path out(opt.out_dir);

  // Decode a flat cell index into one value per axis, first axis slowest.
  auto cell_values = [&](size_t idx) {
    std::vector<json> vals(opt.axes.size());
    for (size_t a = opt.axes.size(); a-- > 0;) {
      vals[a] = opt.axes[a].values[idx % opt.axes[a].values.size()];
      idx /= opt.axes[a].values.size();
    }
    return vals;
  };

  auto run_cell = [&](size_t idx) {
    std::vector<SweepRun> runs;
    std::vector<json> vals = cell_values(idx);
    for (std::uint64_t seed : opt.seeds) {
      json doc = base_doc;
      for (size_t a = 0; a < opt.axes.size(); ++a)
        apply_override(doc, opt.axes[a].key + "=" + vals[a].dump());
      apply_override(doc, "seed=" + std::to_string(seed));
      ScenarioConfig cfg = scenario_from_json(doc, base_dir);
      SimReport rep = run_simulation(cfg);

      SweepRun row;
      row.cell = vals;
      row.seed = seed;
      row.p_rt = rep.agg.p_rt;
      row.p_d = rep.agg.p_d;
      row.rho = rep.agg.rho_mean;
      row.median_t_d = rep.agg.delay.median;
      runs.push_back(row);

      if (opt.write_summaries) {
        std::ofstream js(out / ("summary_cell" + std::to_string(idx) +
                                "_seed" + std::to_string(seed) + ".json"));
        if (!js) throw IoError("cannot write summary JSON in " + opt.out_dir);
        js << summary_json(rep).dump(2) << '\n';
      }
    }
    return runs;
  };

  // Worker pool over cells; the collector below flushes strictly in cell
  // order so the long CSV never depends on scheduling.
  std::vector<CellOutcome> outcomes(n_cells);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<size_t> next_cell{0};
  int jobs = std::max(1, opt.jobs);
  size_t n_workers = std::min<size_t>(jobs, n_cells);

  auto worker = [&] {
    while (true) {
      size_t idx = next_cell.fetch_add(1);
      if (idx >= n_cells) return;
      CellOutcome outcome;
      try {
        outcome.runs = run_cell(idx);
      } catch (...) {
        outcome.error = std::current_exception();
      }
      {
        std::lock_guard<std::mutex> lock(mu);
        outcomes[idx] = std::move(outcome);
        outcomes[idx].done = true;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  for (size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);

  SweepResult result;
  result.long_csv_path = (out / "sweep_long.csv").string();
  std::ofstream csv(result.long_csv_path);
  if (!csv) throw IoError("cannot write " + result.long_csv_path);
  for (const SweepAxis& a : opt.axes) csv << a.key << ',';
  csv << "seed,p_rt,p_d,rho,median_t_d\n";
  csv.flush();

  // Collector: flush cell idx once cells 0..idx are all done, so the file on
  // disk is always an in-order prefix of completed cells.
  std::exception_ptr first_error;
  for (size_t idx = 0; idx < n_cells; ++idx) {
    {
      std::unique_lock<std::mutex> lock(mu);
      cv.wait(lock, [&] { return outcomes[idx].done; });
    }
    CellOutcome& oc = outcomes[idx];
    if (oc.error) {
      if (!first_error) first_error = oc.error;
      continue;
    }
    for (const SweepRun& row : oc.runs) {
      for (const json& v : row.cell) csv << value_str(v) << ',';
      csv << row.seed << ',' << fmt17(row.p_rt) << ',' << fmt17(row.p_d)
          << ',' << fmt17(row.rho) << ',' << fmt17(row.median_t_d) << '\n';
    }
    csv.flush();
    result.runs.insert(result.runs.end(), oc.runs.begin(), oc.runs.end());
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  if (opt.axes.size() == 2) {
    result.pivot_csv_path = (out / "sweep_pivot.csv").string();
    std::ofstream pivot(result.pivot_csv_path);
    if (!pivot) throw IoError("cannot write " + result.pivot_csv_path);
    const SweepAxis& rows = opt.axes[0];
    const SweepAxis& cols = opt.axes[1];
    pivot << rows.key << '\\' << cols.key;
    for (const json& c : cols.values) pivot << ',' << value_str(c);
    pivot << '\n';
    size_t n_seeds = opt.seeds.size();
    for (size_t r = 0; r < rows.values.size(); ++r) {
      pivot << value_str(rows.values[r]);
      for (size_t c = 0; c < cols.values.size(); ++c) {
        size_t cell = r * cols.values.size() + c;
        std::vector<double> prt;
        for (size_t s = 0; s < n_seeds; ++s)
          prt.push_back(result.runs[cell * n_seeds + s].p_rt);
        std::sort(prt.begin(), prt.end());
        double median = prt.size() % 2 == 1
                            ? prt[prt.size() / 2]
                            : 0.5 * (prt[prt.size() / 2 - 1] +
                                     prt[prt.size() / 2]);
        pivot << ',' << fmt17(median);
      }
      pivot << '\n';
    }
  }
  return result;
}

}  // namespace leovec
