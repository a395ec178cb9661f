// Command-line front end: scenario loading, subcommand dispatch, output
// files.  Exit codes: 0 success, 2 configuration error (message names the
// offending key), 3 I/O error, 4 constellation/orbit/network error.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "leovec/engine.hpp"
#include "leovec/fetch.hpp"
#include "leovec/orbit.hpp"
#include "leovec/report.hpp"
#include "leovec/scenario.hpp"
#include "leovec/sweep.hpp"
#include "leovec/tle.hpp"
#include "leovec/version.hpp"

namespace {

using namespace leovec;
using nlohmann::json;

constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_IO = 3;
constexpr int EXIT_CONSTELLATION = 4;

struct CommonOpts {
  std::string scenario_path;
  std::vector<std::string> overrides;
  std::string seeds_csv;
  std::string out_dir = ".";
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_seeds = true) {
  cmd->add_option("--scenario", opts.scenario_path, "Scenario JSON file")
      ->required();
  cmd->add_option("--override", opts.overrides,
                  "Scenario override key=value (repeatable)");
  if (with_seeds)
    cmd->add_option("--seeds", opts.seeds_csv,
                    "Comma-separated seed list (default: scenario seed)");
  cmd->add_option("--out", opts.out_dir, "Output directory (default: .)");
  cmd->add_option("--jobs", opts.jobs, "Parallel runs (default: 1)")
      ->check(CLI::PositiveNumber);
}

json load_doc(const CommonOpts& opts, std::string& base_dir) {
  std::ifstream in(opts.scenario_path);
  if (!in) throw IoError("cannot open scenario file: " + opts.scenario_path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario file " + opts.scenario_path +
                      " is not valid JSON: " + e.what());
  }
  for (const std::string& ov : opts.overrides) apply_override(doc, ov);
  base_dir = std::filesystem::path(opts.scenario_path).parent_path().string();
  return doc;
}

std::vector<std::uint64_t> parse_seeds(const std::string& csv,
                                       std::uint64_t fallback) {
  if (csv.empty()) return {fallback};
  std::vector<std::uint64_t> seeds;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t comma = csv.find(',', pos);
    std::string item = csv.substr(pos, comma - pos);
    try {
      size_t used = 0;
      seeds.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--seeds entries must be integers, got '" + item +
                        "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return seeds;
}

int cmd_simulate(const CommonOpts& opts) {
  std::string base_dir;
  json doc = load_doc(opts, base_dir);
  ScenarioConfig probe = scenario_from_json(doc, base_dir);
  std::vector<std::uint64_t> seeds = parse_seeds(opts.seeds_csv, probe.seed);
  std::filesystem::create_directories(opts.out_dir);

  struct Outcome {
    std::string line;
    std::exception_ptr error;
  };
  std::vector<Outcome> outcomes(seeds.size());
  std::atomic<size_t> next{0};

  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      try {
        json run_doc = doc;
        apply_override(run_doc, "seed=" + std::to_string(seeds[i]));
        ScenarioConfig cfg = scenario_from_json(run_doc, base_dir);
        SimReport rep = run_simulation(cfg);

        std::filesystem::path out(opts.out_dir);
        std::string stamp = "seed" + std::to_string(seeds[i]);
        std::ofstream frames(out / ("frames_" + stamp + ".csv"));
        if (!frames)
          throw IoError("cannot write frames CSV in " + opts.out_dir);
        write_frames_csv(frames, rep.frames);
        std::ofstream summary(out / ("summary_" + stamp + ".json"));
        if (!summary)
          throw IoError("cannot write summary JSON in " + opts.out_dir);
        summary << summary_json(rep).dump(2) << '\n';

        char line[256];
        std::snprintf(line, sizeof line,
                      "seed=%llu p_rt=%.4f p_d=%.4f onboard=%.4f "
                      "offload=%.4f drop=%.4f median_t_d=%.6g wall_s=%.2f",
                      static_cast<unsigned long long>(seeds[i]), rep.agg.p_rt,
                      rep.agg.p_d, rep.agg.frac_onboard, rep.agg.frac_offload,
                      rep.agg.frac_drop, rep.agg.delay.median,
                      rep.wall_time_s);
        outcomes[i].line = line;
      } catch (...) {
        outcomes[i].error = std::current_exception();
      }
    }
  };

  size_t n_workers = std::min<size_t>(std::max(1, opts.jobs), seeds.size());
  std::vector<std::thread> pool;
  for (size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (Outcome& oc : outcomes) {
    if (oc.error) std::rethrow_exception(oc.error);
    std::cout << oc.line << '\n';
  }
  return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::vector<std::string>& axes) {
  std::string base_dir;
  json doc = load_doc(opts, base_dir);
  ScenarioConfig probe = scenario_from_json(doc, base_dir);

  SweepOptions sw;
  for (const std::string& spec : axes) sw.axes.push_back(parse_axis(spec));
  sw.seeds = parse_seeds(opts.seeds_csv, probe.seed);
  sw.jobs = opts.jobs;
  sw.out_dir = opts.out_dir;

  SweepResult res = run_sweep(doc, base_dir, sw);
  size_t cells = res.runs.size() / sw.seeds.size();
  std::cout << "wrote " << res.long_csv_path << " (" << cells << " cells x "
            << sw.seeds.size() << " seeds)\n";
  if (!res.pivot_csv_path.empty())
    std::cout << "wrote " << res.pivot_csv_path << '\n';
  return 0;
}

int cmd_trace(const CommonOpts& opts, const std::string& sats_csv,
              double step_s, double duration_s) {
  std::string base_dir;
  json doc = load_doc(opts, base_dir);
  ScenarioConfig cfg = scenario_from_json(doc, base_dir);

  std::vector<int> ids;
  if (!sats_csv.empty())
    for (std::uint64_t v : parse_seeds(sats_csv, 0))
      ids.push_back(static_cast<int>(v));
  double duration = duration_s > 0.0 ? duration_s : cfg.sim_time_s;

  std::vector<TraceSample> samples = elevation_trace(cfg, ids, duration,
                                                     step_s);
  std::filesystem::create_directories(opts.out_dir);
  std::filesystem::path out =
      std::filesystem::path(opts.out_dir) / "elevation.csv";
  std::ofstream f(out);
  if (!f) throw IoError("cannot write " + out.string());
  f << "t_s,sat_id,elevation_deg,slant_km\n";
  char buf[128];
  for (const TraceSample& s : samples) {
    std::snprintf(buf, sizeof buf, "%.9g,%d,%.9g,%.9g\n", s.t_s, s.sat_id,
                  s.elevation_deg, s.slant_km);
    f << buf;
  }
  std::cout << "wrote " << out.string() << " (" << samples.size()
            << " samples)\n";
  return 0;
}

int cmd_fetch(const std::string& group, const std::string& endpoint,
              std::string cache_dir, const std::string& date, bool offline) {
  if (cache_dir.empty()) {
    if (const char* env = std::getenv("LEOVEC_CACHE")) cache_dir = env;
  }
  if (cache_dir.empty()) {
    const char* home = std::getenv("HOME");
    cache_dir = std::string(home ? home : ".") + "/.cache/leovec";
  }
  FetchOptions fo;
  fo.cache_dir = cache_dir;
  fo.date_utc = date;
  fo.offline = offline;
  auto transport = make_http_transport();
  std::string blob = fetch_tle_group(*transport, endpoint, group, fo);
  std::vector<TleRecord> records = parse_tle_file(blob);
  std::cout << "group " << group << ": " << records.size()
            << " element sets -> " << tle_cache_path(cache_dir, group, date)
            << '\n';
  return 0;
}

int cmd_report(const std::string& results_dir, const std::string& out_dir) {
  ReportPaths paths =
      write_report(results_dir, out_dir.empty() ? results_dir : out_dir);
  std::cout << "read " << paths.runs << " run summaries\n"
            << "wrote " << paths.bars_csv << '\n'
            << "wrote " << paths.mix_csv << '\n'
            << "wrote " << paths.delay_box_csv << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LEO satellite edge-offloading simulator"};
  app.set_version_flag("--version", std::string(VERSION));
  app.require_subcommand(1);

  CommonOpts sim_opts;
  CLI::App* sim = app.add_subcommand("simulate", "Run one scenario");
  add_common(sim, sim_opts);

  CommonOpts sweep_opts;
  std::vector<std::string> axes;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter grid");
  add_common(sweep, sweep_opts);
  sweep->add_option("--axis", axes, "Grid axis key=v1,v2,... (repeatable)")
      ->required();

  CommonOpts trace_opts;
  std::string sats_csv;
  double step_s = 1.0, duration_s = 0.0;
  CLI::App* trace = app.add_subcommand(
      "trace-elevation", "Elevation/slant time series from the fleet centre");
  add_common(trace, trace_opts, /*with_seeds=*/false);
  trace->add_option("--sats", sats_csv,
                    "Catalog ids (default: all above horizon at t=0)");
  trace->add_option("--step", step_s, "Sample step in seconds (default: 1)")
      ->check(CLI::PositiveNumber);
  trace->add_option("--duration", duration_s,
                    "Trace length in seconds (default: sim_time_s)");

  std::string group, endpoint = "https://celestrak.org/NORAD/elements/gp.php";
  std::string cache_dir, date;
  bool offline = false;
  CLI::App* fetch = app.add_subcommand("fetch-tle", "Download a TLE catalog");
  fetch->add_option("--group", group, "Catalog group, e.g. starlink")
      ->required();
  fetch->add_option("--endpoint", endpoint, "Catalog endpoint URL");
  fetch->add_option("--cache", cache_dir,
                    "Cache directory (default: $LEOVEC_CACHE or "
                    "~/.cache/leovec)");
  fetch->add_option("--date", date, "Cache date YYYY-MM-DD (default: today)");
  fetch->add_flag("--offline", offline, "Serve from cache only");

  std::string results_dir, report_out;
  CLI::App* report = app.add_subcommand("report", "Reshape run summaries "
                                                  "into plot-ready tables");
  report->add_option("--results", results_dir, "Directory of run summaries")
      ->required();
  report->add_option("--out", report_out,
                     "Output directory (default: --results)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return EXIT_CONFIG;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, axes);
    if (trace->parsed())
      return cmd_trace(trace_opts, sats_csv, step_s, duration_s);
    if (fetch->parsed())
      return cmd_fetch(group, endpoint, cache_dir, date, offline);
    if (report->parsed()) return cmd_report(results_dir, report_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return EXIT_CONFIG;
  } catch (const PolicyError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return EXIT_CONFIG;
  } catch (const LinkError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return EXIT_CONFIG;
  } catch (const QueueError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return EXIT_CONFIG;
  } catch (const ReportError& e) {
    std::cerr << "report error: " << e.what() << '\n';
    return EXIT_IO;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return EXIT_IO;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return EXIT_IO;
  } catch (const TleError& e) {
    std::cerr << "constellation error: " << e.what() << '\n';
    return EXIT_CONSTELLATION;
  } catch (const OrbitError& e) {
    std::cerr << "constellation error: " << e.what() << '\n';
    return EXIT_CONSTELLATION;
  } catch (const FetchError& e) {
    std::cerr << "constellation error: " << e.what() << '\n';
    return EXIT_CONSTELLATION;
  } catch (const EngineError& e) {
    std::cerr << "constellation error: " << e.what() << '\n';
    return EXIT_CONSTELLATION;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
