#include "leovec/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace leovec {

using nlohmann::json;

namespace {

// Pulls a key out of `obj`, tracking it as consumed so leftovers can be
// reported as unknown keys afterwards.
class KeyReader {
 public:
  KeyReader(const json& obj, std::string scope)
      : obj_(obj), scope_(std::move(scope)) {
    if (!obj.is_object())
      throw ConfigError("section '" + scope_ + "' must be a JSON object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key);
  }

  const json& require(const std::string& key) {
    seen_.insert(key);
    if (!obj_.contains(key))
      throw ConfigError("missing required scenario key '" + qualify(key) + "'");
    return obj_.at(key);
  }

  const json* optional(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key) ? &obj_.at(key) : nullptr;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key()))
        throw ConfigError("unknown scenario key '" + qualify(it.key()) + "'");
  }

  std::string qualify(const std::string& key) const {
    return scope_.empty() ? key : scope_ + "." + key;
  }

 private:
  const json& obj_;
  std::string scope_;
  std::set<std::string> seen_;
};

double as_number(const json& v, const std::string& key) {
  if (!v.is_number())
    throw ConfigError("scenario key '" + key + "' must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer())
    throw ConfigError("scenario key '" + key + "' must be an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string())
    throw ConfigError("scenario key '" + key + "' must be a string");
  return v.get<std::string>();
}

LossModel loss_from_json(const json& v, const std::string& key) {
  if (v.is_number()) return LossModel(v.get<double>());
  if (v.is_array()) {
    std::vector<std::pair<double, double>> table;
    for (const json& row : v) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() ||
          !row[1].is_number())
        throw ConfigError("scenario key '" + key +
                          "' rows must be [elevation_deg, loss_db] pairs");
      table.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    try {
      return LossModel(std::move(table));
    } catch (const LinkError& e) {
      throw ConfigError("scenario key '" + key + "': " + e.what());
    }
  }
  throw ConfigError("scenario key '" + key +
                    "' must be a number or a table of pairs");
}

json loss_to_json(const LossModel& m) {
  if (!m.is_table()) return json(m.constant());
  json rows = json::array();
  for (const auto& [elev, db] : m.table()) rows.push_back({elev, db});
  return rows;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (schema_version != 1)
    throw ConfigError("unsupported schema_version " +
                      std::to_string(schema_version));
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0))
      throw ConfigError(std::string("scenario key '") + key +
                        "' must be positive");
  };
  positive(sim_time_s, "sim_time_s");
  positive(deadline_s, "deadline_s");
  positive(frame_rate_fps, "frame_rate_fps");
  positive(load_tflop, "load_tflop");
  positive(leo_capacity_tflops, "leo_capacity_tflops");
  positive(packet_ul_mb, "packet_ul_mb");
  positive(packet_dl_mb, "packet_dl_mb");
  positive(channel.carrier_ghz, "channel.carrier_ghz");
  positive(channel.bandwidth_hz, "channel.bandwidth_hz");
  positive(geometry_refresh_s, "geometry_refresh_s");
  if (gv_capacity_tflops < 0.0)
    throw ConfigError("scenario key 'gv_capacity_tflops' must be >= 0");
  if (n_gvs < 1) throw ConfigError("scenario key 'n_gvs' must be >= 1");
  if (constellation_size < 0)
    throw ConfigError("scenario key 'constellation.size' must be >= 0");
  if (gv_radius_km < 0.0)
    throw ConfigError("scenario key 'gvs.radius_km' must be >= 0");
  if (gv_center_lat_deg < -90.0 || gv_center_lat_deg > 90.0)
    throw ConfigError("scenario key 'gvs.center_lat_deg' must be in [-90, 90]");
  if (gv_center_lon_deg < -180.0 || gv_center_lon_deg > 180.0)
    throw ConfigError(
        "scenario key 'gvs.center_lon_deg' must be in [-180, 180]");
  if (min_elevation_deg < 0.0 || min_elevation_deg >= 90.0)
    throw ConfigError("scenario key 'min_elevation_deg' must be in [0, 90)");
  if (kernel_threads < 0)
    throw ConfigError("scenario key 'kernel_threads' must be >= 0");
  if (tle_path.empty())
    throw ConfigError("missing required scenario key 'constellation.tle_path'");
  try {
    policy.validate();
  } catch (const PolicyError& e) {
    throw ConfigError(std::string("policy: ") + e.what());
  }
}

ScenarioConfig scenario_from_json(const json& doc, const std::string& base_dir) {
  ScenarioConfig cfg;
  KeyReader top(doc, "");

  cfg.schema_version = as_int(top.require("schema_version"), "schema_version");
  if (const json* v = top.optional("seed")) {
    if (!v->is_number_unsigned() && !v->is_number_integer())
      throw ConfigError("scenario key 'seed' must be an integer");
    cfg.seed = v->get<uint64_t>();
  }
  cfg.sim_time_s = as_number(top.require("sim_time_s"), "sim_time_s");
  cfg.deadline_s = as_number(top.require("deadline_s"), "deadline_s");
  cfg.n_gvs = as_int(top.require("n_gvs"), "n_gvs");
  cfg.frame_rate_fps =
      as_number(top.require("frame_rate_fps"), "frame_rate_fps");
  cfg.load_tflop = as_number(top.require("load_tflop"), "load_tflop");
  cfg.gv_capacity_tflops =
      as_number(top.require("gv_capacity_tflops"), "gv_capacity_tflops");
  cfg.leo_capacity_tflops =
      as_number(top.require("leo_capacity_tflops"), "leo_capacity_tflops");
  cfg.packet_ul_mb = as_number(top.require("packet_ul_mb"), "packet_ul_mb");
  cfg.packet_dl_mb = as_number(top.require("packet_dl_mb"), "packet_dl_mb");

  {
    KeyReader cons(top.require("constellation"), "constellation");
    cfg.tle_path = as_string(cons.require("tle_path"), "constellation.tle_path");
    if (const json* v = cons.optional("size"))
      cfg.constellation_size = as_int(*v, "constellation.size");
    if (const json* v = cons.optional("start_utc"))
      cfg.start_utc = as_string(*v, "constellation.start_utc");
    cons.finish();
    std::filesystem::path p(cfg.tle_path);
    if (p.is_relative() && !base_dir.empty())
      cfg.tle_path = (std::filesystem::path(base_dir) / p).lexically_normal()
                         .string();
  }

  if (const json* gvs = top.optional("gvs")) {
    KeyReader g(*gvs, "gvs");
    if (const json* v = g.optional("center_lat_deg"))
      cfg.gv_center_lat_deg = as_number(*v, "gvs.center_lat_deg");
    if (const json* v = g.optional("center_lon_deg"))
      cfg.gv_center_lon_deg = as_number(*v, "gvs.center_lon_deg");
    if (const json* v = g.optional("radius_km"))
      cfg.gv_radius_km = as_number(*v, "gvs.radius_km");
    g.finish();
  }

  if (const json* ch = top.optional("channel")) {
    KeyReader c(*ch, "channel");
    if (const json* v = c.optional("carrier_ghz"))
      cfg.channel.carrier_ghz = as_number(*v, "channel.carrier_ghz");
    if (const json* v = c.optional("bandwidth_hz"))
      cfg.channel.bandwidth_hz = as_number(*v, "channel.bandwidth_hz");
    if (const json* v = c.optional("boltzmann_dbw"))
      cfg.channel.boltzmann_dbw = as_number(*v, "channel.boltzmann_dbw");
    if (const json* v = c.optional("scint_loss"))
      cfg.channel.scint_loss = loss_from_json(*v, "channel.scint_loss");
    if (const json* v = c.optional("gas_loss"))
      cfg.channel.gas_loss = loss_from_json(*v, "channel.gas_loss");
    c.finish();
  }

  if (const json* lk = top.optional("link")) {
    KeyReader l(*lk, "link");
    if (const json* v = l.optional("gv_eirp_dbw"))
      cfg.gv_eirp_dbw = as_number(*v, "link.gv_eirp_dbw");
    if (const json* v = l.optional("gv_g_over_t_dbk"))
      cfg.gv_g_over_t_dbk = as_number(*v, "link.gv_g_over_t_dbk");
    if (const json* v = l.optional("sat_eirp_dbw"))
      cfg.sat_eirp_dbw = as_number(*v, "link.sat_eirp_dbw");
    if (const json* v = l.optional("sat_g_over_t_dbk"))
      cfg.sat_g_over_t_dbk = as_number(*v, "link.sat_g_over_t_dbk");
    l.finish();
  }

  if (const json* pol = top.optional("policy")) {
    KeyReader p(*pol, "policy");
    if (const json* v = p.optional("selection")) {
      std::string s = as_string(*v, "policy.selection");
      if (s == "ms") cfg.policy.selection = SelectionPolicy::MaxSnr;
      else if (s == "sr") cfg.policy.selection = SelectionPolicy::SatRandomized;
      else throw ConfigError("policy.selection must be 'ms' or 'sr', got '" + s + "'");
    }
    if (const json* v = p.optional("offload")) {
      std::string s = as_string(*v, "policy.offload");
      if (s == "boo") cfg.policy.offload = OffloadPolicy::BackoffOnly;
      else if (s == "ldboo") cfg.policy.offload = OffloadPolicy::LightDropBackoff;
      else throw ConfigError("policy.offload must be 'boo' or 'ldboo', got '" + s + "'");
    }
    if (const json* v = p.optional("sigma"))
      cfg.policy.sigma = as_number(*v, "policy.sigma");
    if (const json* v = p.optional("backoff_max_frames"))
      cfg.policy.backoff_max_frames = as_int(*v, "policy.backoff_max_frames");
    if (const json* v = p.optional("snr_serve_th_db"))
      cfg.policy.snr_serve_th_db = as_number(*v, "policy.snr_serve_th_db");
    if (const json* v = p.optional("snr_select_th_db"))
      cfg.policy.snr_select_th_db = as_number(*v, "policy.snr_select_th_db");
    p.finish();
  }

  if (const json* v = top.optional("geometry_refresh_s"))
    cfg.geometry_refresh_s = as_number(*v, "geometry_refresh_s");
  if (const json* v = top.optional("min_elevation_deg"))
    cfg.min_elevation_deg = as_number(*v, "min_elevation_deg");
  if (const json* v = top.optional("kernel_threads"))
    cfg.kernel_threads = as_int(*v, "kernel_threads");

  top.finish();
  cfg.policy.deadline_s = cfg.deadline_s;
  cfg.validate();
  return cfg;
}

json scenario_to_json(const ScenarioConfig& cfg) {
  json doc;
  doc["schema_version"] = cfg.schema_version;
  doc["seed"] = cfg.seed;
  doc["sim_time_s"] = cfg.sim_time_s;
  doc["deadline_s"] = cfg.deadline_s;
  doc["n_gvs"] = cfg.n_gvs;
  doc["frame_rate_fps"] = cfg.frame_rate_fps;
  doc["load_tflop"] = cfg.load_tflop;
  doc["gv_capacity_tflops"] = cfg.gv_capacity_tflops;
  doc["leo_capacity_tflops"] = cfg.leo_capacity_tflops;
  doc["packet_ul_mb"] = cfg.packet_ul_mb;
  doc["packet_dl_mb"] = cfg.packet_dl_mb;
  doc["constellation"] = {{"tle_path", cfg.tle_path},
                          {"size", cfg.constellation_size}};
  if (!cfg.start_utc.empty())
    doc["constellation"]["start_utc"] = cfg.start_utc;
  doc["gvs"] = {{"center_lat_deg", cfg.gv_center_lat_deg},
                {"center_lon_deg", cfg.gv_center_lon_deg},
                {"radius_km", cfg.gv_radius_km}};
  doc["channel"] = {{"carrier_ghz", cfg.channel.carrier_ghz},
                    {"bandwidth_hz", cfg.channel.bandwidth_hz},
                    {"boltzmann_dbw", cfg.channel.boltzmann_dbw},
                    {"scint_loss", loss_to_json(cfg.channel.scint_loss)},
                    {"gas_loss", loss_to_json(cfg.channel.gas_loss)}};
  doc["link"] = {{"gv_eirp_dbw", cfg.gv_eirp_dbw},
                 {"gv_g_over_t_dbk", cfg.gv_g_over_t_dbk},
                 {"sat_eirp_dbw", cfg.sat_eirp_dbw},
                 {"sat_g_over_t_dbk", cfg.sat_g_over_t_dbk}};
  doc["policy"] = {
      {"selection",
       cfg.policy.selection == SelectionPolicy::MaxSnr ? "ms" : "sr"},
      {"offload",
       cfg.policy.offload == OffloadPolicy::BackoffOnly ? "boo" : "ldboo"},
      {"sigma", cfg.policy.sigma},
      {"backoff_max_frames", cfg.policy.backoff_max_frames},
      {"snr_serve_th_db", cfg.policy.snr_serve_th_db},
      {"snr_select_th_db", cfg.policy.snr_select_th_db}};
  doc["geometry_refresh_s"] = cfg.geometry_refresh_s;
  doc["min_elevation_deg"] = cfg.min_elevation_deg;
  doc["kernel_threads"] = cfg.kernel_threads;
  return doc;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario file " + path + " is not valid JSON: " +
                      e.what());
  }
  return scenario_from_json(doc,
                            std::filesystem::path(path).parent_path().string());
}

void apply_override(json& doc, const std::string& assignment) {
  size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like key=value, got '" + assignment +
                      "'");
  std::string key = assignment.substr(0, eq);
  std::string value = assignment.substr(eq + 1);

  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;  // bare words are strings
  }

  json* node = &doc;
  size_t pos = 0;
  while (true) {
    size_t dot = key.find('.', pos);
    std::string part = key.substr(pos, dot - pos);
    if (part.empty())
      throw ConfigError("override key '" + key + "' has an empty segment");
    if (dot == std::string::npos) {
      (*node)[part] = parsed;
      return;
    }
    node = &(*node)[part];
    pos = dot + 1;
  }
}

}  // namespace leovec
