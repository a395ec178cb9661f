#include "leovec/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "json.hpp"

namespace leovec {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Row {
  std::string policy;  // "<selection>-<offload>", e.g. "sr-ldboo"
  double sigma = 0.0;
  int t_o_max = 0;
  double p_rt = 0.0, p_d = 0.0;
  double c_leo = 0.0;
  int s = 0;  // constellation size actually used
  double frac_onboard = 0.0, frac_offload = 0.0, frac_drop = 0.0;
  double rho = 0.0;
  double d_min = NAN, d_q1 = NAN, d_median = NAN, d_q3 = NAN, d_max = NAN;
  std::uint64_t seed = 0;
};

bool read_summary(const std::filesystem::path& path, Row& row) {
  std::ifstream in(path);
  if (!in) return false;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error&) {
    return false;  // not one of ours
  }
  if (!doc.is_object() || !doc.contains("aggregates") ||
      !doc.contains("config"))
    return false;
  const json& cfg = doc["config"];
  const json& agg = doc["aggregates"];
  const json& pol = cfg["policy"];
  row.policy = pol["selection"].get<std::string>() + "-" +
               pol["offload"].get<std::string>();
  row.sigma = pol["sigma"].get<double>();
  row.t_o_max = pol["backoff_max_frames"].get<int>();
  row.p_rt = agg["p_rt"].get<double>();
  row.p_d = agg["p_d"].get<double>();
  row.c_leo = cfg["leo_capacity_tflops"].get<double>();
  int size_key = cfg["constellation"]["size"].get<int>();
  row.s = size_key > 0 ? size_key : doc.value("constellation_n", 0);
  row.frac_onboard = agg["frac_onboard"].get<double>();
  row.frac_offload = agg["frac_offload"].get<double>();
  row.frac_drop = agg["frac_drop"].get<double>();
  row.rho = agg["rho_mean"].get<double>();
  const json& delay = agg["delay_s"];
  auto opt = [&](const char* key) {
    return delay[key].is_number() ? delay[key].get<double>() : NAN;
  };
  row.d_min = opt("min");
  row.d_q1 = opt("q1");
  row.d_median = opt("median");
  row.d_q3 = opt("q3");
  row.d_max = opt("max");
  row.seed = doc.value("seed", std::uint64_t{0});
  return true;
}

}  // namespace

ReportPaths write_report(const std::string& results_dir,
                         const std::string& out_dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(results_dir))
    throw ReportError("results directory '" + results_dir +
                      "' does not exist");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(results_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<Row> rows;
  for (const fs::path& p : files) {
    Row row;
    if (read_summary(p, row)) rows.push_back(row);
  }
  if (rows.empty())
    throw ReportError("no run summaries found in '" + results_dir + "'");

  // One row per run; plotting tools group/aggregate as they see fit.  Sort
  // by the category columns (then seed) so output order is reproducible.
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.policy, a.sigma, a.t_o_max, a.c_leo, a.s, a.seed) <
           std::tie(b.policy, b.sigma, b.t_o_max, b.c_leo, b.s, b.seed);
  });

  fs::create_directories(out_dir);
  ReportPaths out;
  out.runs = static_cast<int>(rows.size());

  out.bars_csv = (fs::path(out_dir) / "report_bars.csv").string();
  {
    std::ofstream f(out.bars_csv);
    if (!f) throw IoError("cannot write " + out.bars_csv);
    f << "policy,sigma,t_o_max,P_RT,P_D\n";
    for (const Row& r : rows)
      f << r.policy << ',' << fmt(r.sigma) << ',' << r.t_o_max << ','
        << fmt(r.p_rt) << ',' << fmt(r.p_d) << '\n';
  }

  out.mix_csv = (fs::path(out_dir) / "report_mix.csv").string();
  {
    std::ofstream f(out.mix_csv);
    if (!f) throw IoError("cannot write " + out.mix_csv);
    f << "C_LEO,s,frac_onboard,frac_offload,frac_drop,rho\n";
    for (const Row& r : rows)
      f << fmt(r.c_leo) << ',' << r.s << ',' << fmt(r.frac_onboard) << ','
        << fmt(r.frac_offload) << ',' << fmt(r.frac_drop) << ',' << fmt(r.rho)
        << '\n';
  }

  out.delay_box_csv = (fs::path(out_dir) / "report_delay_box.csv").string();
  {
    std::ofstream f(out.delay_box_csv);
    if (!f) throw IoError("cannot write " + out.delay_box_csv);
    f << "policy,sigma,t_o_max,min,q1,median,q3,max\n";
    for (const Row& r : rows)
      f << r.policy << ',' << fmt(r.sigma) << ',' << r.t_o_max << ','
        << fmt(r.d_min) << ',' << fmt(r.d_q1) << ',' << fmt(r.d_median) << ','
        << fmt(r.d_q3) << ',' << fmt(r.d_max) << '\n';
  }
  return out;
}

}  // namespace leovec
