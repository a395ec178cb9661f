#include "leovec/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "leovec/constants.hpp"
#include "leovec/link.hpp"
#include "leovec/orbit.hpp"
#include "leovec/policy.hpp"
#include "leovec/rng.hpp"
#include "leovec/tle.hpp"
#include "leovec/version.hpp"
#include "leovec/visibility.hpp"

namespace leovec {

using namespace constants;

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

// -------------------------------------------------------------------------
// Event plumbing.  Equal-time events run in a fixed type order (geometry
// first, frame decisions last, feedback beats its own timeout) and, within a
// type, in insertion order.  That ordering is part of the determinism
// contract, not a tuning knob.
// -------------------------------------------------------------------------

enum EvType : int {
  kGeometryRefresh = 0,
  kSatArrival = 1,
  kFeedbackArrival = 2,
  kFeedbackTimeout = 3,
  kFrameGen = 4,
};

struct Event {
  double t = 0.0;
  int type = kFrameGen;
  long order = 0;
  int gv = -1;       // FeedbackArrival / FeedbackTimeout
  long frame = -1;   // global frame index
  FeedbackView fb;   // FeedbackArrival payload
  double fb_cum = 0.0;  // satellite's cumulative admitted work at fb stamp
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.t != b.t) return a.t > b.t;
    if (a.type != b.type) return a.type > b.type;
    return a.order > b.order;
  }
};

// Decision-time snapshot of the GV<->serving-satellite link.  Every number a
// frame's fate depends on is frozen here; nothing is re-evaluated later.
struct PairLink {
  bool visible = false;
  double snr_db = -INF;
  double t_ul = NAN, t_dl = NAN, tau_p = NAN;
};

struct SatRuntime {
  WorkQueue queue;
  long arrivals = 0;
  double cum_admitted_s = 0.0;  // total admitted service time, for audits
  explicit SatRuntime(double service_s) : queue(service_s) {}
};

struct GvRuntime {
  GroundSite site;
  std::optional<WorkQueue> local;  // absent when onboard compute is disabled
  GvPolicyState policy;
  double radio_free_t = -INF;  // the uplink radio sends one frame at a time
  std::vector<Candidate> candidates;  // last scan, sorted by catalog id
  double last_fb_cum = NAN;  // admitted-work stamp of the stored feedback
};

class Engine {
 public:
  explicit Engine(const ScenarioConfig& cfg)
      : cfg_(cfg),
        sr_rng_(make_stream(cfg.seed, "sr-selection")),
        light_rng_(make_stream(cfg.seed, "light-drop")),
        backoff_rng_(make_stream(cfg.seed, "backoff")) {}

  SimReport run();

 private:
  void init();
  void schedule(double t, int type, int gv, long frame) {
    heap_.push({t, type, next_order_++, gv, frame, {}, 0.0});
  }
  void schedule_feedback(double t, int gv, const FeedbackView& fb,
                         double fb_cum) {
    heap_.push({t, kFeedbackArrival, next_order_++, gv, fb.seq, fb, fb_cum});
  }

  PairLink eval_pair(int sat_index, const GroundSite& site, double t) const;
  void close_out(FrameRecord& rec) const;

  void on_geometry_refresh(double t);
  void on_frame_gen(double t, long frame_idx);
  void on_sat_arrival(double t, long frame_idx);

  const ScenarioConfig cfg_;
  PolicyConfig pol_;

  std::vector<KeplerElements> roster_;
  std::vector<int> catalog_ids_;
  std::unordered_map<int, int> id_to_index_;
  double start_jd_ = 0.0;

  double service_leo_s_ = 0.0;
  double service_gv_s_ = 0.0;
  double ul_bits_ = 0.0, dl_bits_ = 0.0;
  LinkEndpointParams gv_ep_, sat_ep_;

  long frames_per_gv_ = 0;
  std::vector<FrameRecord> records_;
  std::vector<double> fb_cum_at_decision_;  // per frame, NaN = no feedback

  std::vector<SatRuntime> sats_;
  std::vector<GvRuntime> gvs_;
  std::vector<GroundSite> site_buf_;
  std::vector<SatSnapshot> snap_buf_;
  std::vector<std::vector<VisibleSat>> vis_buf_;

  Pcg32 sr_rng_, light_rng_, backoff_rng_;

  std::priority_queue<Event, std::vector<Event>, EventAfter> heap_;
  long next_order_ = 0;
  long refresh_k_ = 0;
};

// Shared loader so simulation and the geometry traces agree on the roster
// and the reference epoch.
struct Roster {
  std::vector<KeplerElements> elements;
  std::vector<int> catalog_ids;
  double start_jd = 0.0;
};

Roster load_roster(const ScenarioConfig& cfg) {
  Roster out;
  Constellation con =
      load_constellation(cfg.tle_path, cfg.constellation_size, cfg.seed);
  out.elements.reserve(con.records.size());
  double latest_epoch = -INF;
  for (const TleRecord& rec : con.records) {
    out.elements.push_back(make_elements(rec));
    out.catalog_ids.push_back(rec.catalog_id);
    latest_epoch = std::max(latest_epoch, out.elements.back().epoch_jd);
  }
  if (out.elements.empty())
    throw EngineError("constellation '" + cfg.tle_path + "' is empty");
  out.start_jd =
      cfg.start_utc.empty() ? latest_epoch : jd_from_iso8601(cfg.start_utc);
  return out;
}

void Engine::init() {
  cfg_.validate();
  pol_ = cfg_.policy;

  Roster r = load_roster(cfg_);
  roster_ = std::move(r.elements);
  catalog_ids_ = std::move(r.catalog_ids);
  start_jd_ = r.start_jd;
  for (int i = 0; i < static_cast<int>(catalog_ids_.size()); ++i)
    id_to_index_.emplace(catalog_ids_[i], i);

  service_leo_s_ = service_time_s(cfg_.load_tflop, cfg_.leo_capacity_tflops);
  if (cfg_.gv_capacity_tflops > 0.0)
    service_gv_s_ = service_time_s(cfg_.load_tflop, cfg_.gv_capacity_tflops);
  ul_bits_ = cfg_.packet_ul_mb * 1.0e6;
  dl_bits_ = cfg_.packet_dl_mb * 1.0e6;
  gv_ep_ = {cfg_.gv_eirp_dbw, cfg_.gv_g_over_t_dbk, LinkRole::GroundVehicle};
  sat_ep_ = {cfg_.sat_eirp_dbw, cfg_.sat_g_over_t_dbk, LinkRole::Satellite};

  sats_.reserve(roster_.size());
  for (size_t i = 0; i < roster_.size(); ++i)
    sats_.emplace_back(service_leo_s_);

  // Fleet placement: uniform over a disk around the centre, one stream so
  // GV k's position never depends on how many frames GV k-1 generated.
  Pcg32 place = make_stream(cfg_.seed, "gv-placement");
  double clat = cfg_.gv_center_lat_deg * DEG_TO_RAD;
  gvs_.resize(cfg_.n_gvs);
  for (int g = 0; g < cfg_.n_gvs; ++g) {
    double u1 = place.next_double(), u2 = place.next_double();
    double rad = cfg_.gv_radius_km * std::sqrt(u1);
    double phi = 2.0 * PI * u2;
    double east_km = rad * std::cos(phi), north_km = rad * std::sin(phi);
    double lat =
        cfg_.gv_center_lat_deg + (north_km / EARTH_RADIUS_KM) * RAD_TO_DEG;
    double lon = cfg_.gv_center_lon_deg +
                 (east_km / (EARTH_RADIUS_KM * std::cos(clat))) * RAD_TO_DEG;
    gvs_[g].site = make_site(lat, lon);
    if (service_gv_s_ > 0.0) gvs_[g].local.emplace(service_gv_s_);
  }
  site_buf_.resize(cfg_.n_gvs);
  for (int g = 0; g < cfg_.n_gvs; ++g) site_buf_[g] = gvs_[g].site;

  frames_per_gv_ = static_cast<long>(
      std::ceil(cfg_.sim_time_s * cfg_.frame_rate_fps - 1e-9));
  if (frames_per_gv_ < 0) frames_per_gv_ = 0;
  records_.assign(static_cast<size_t>(cfg_.n_gvs) * frames_per_gv_, {});
  fb_cum_at_decision_.assign(records_.size(), NAN);

  schedule(0.0, kGeometryRefresh, -1, -1);
  for (int g = 0; g < cfg_.n_gvs; ++g)
    if (frames_per_gv_ > 0)
      schedule(0.0, kFrameGen, g, static_cast<long>(g) * frames_per_gv_);
}

PairLink Engine::eval_pair(int sat_index, const GroundSite& site,
                           double t) const {
  // Mirrors the visibility kernel's exact path so a decision made between
  // refreshes is consistent with the scan that produced the candidates.
  PairLink out;
  SatelliteState st =
      propagate(roster_[sat_index], start_jd_ + t / SECONDS_PER_DAY);
  double cos_alpha =
      central_angle_cos(site.lat_deg, site.lon_deg, st.lat_deg, st.lon_deg);
  if (cos_alpha <= horizon_cos(st.alt_km)) return out;
  double slant = slant_range_km(st.alt_km, cos_alpha);
  double elev = elevation_deg(st.alt_km, cos_alpha, slant);
  if (elev < cfg_.min_elevation_deg) return out;
  LinkState ul = evaluate_link(gv_ep_, sat_ep_, cfg_.channel, slant, elev);
  LinkState dl = evaluate_link(sat_ep_, gv_ep_, cfg_.channel, slant, elev);
  out.visible = true;
  out.snr_db = ul.snr_db;
  out.t_ul = tx_delay_s(ul_bits_, ul.rate_bps);
  out.t_dl = tx_delay_s(dl_bits_, dl.rate_bps);
  out.tau_p = propagation_delay_s(slant);
  return out;
}

void Engine::close_out(FrameRecord& rec) const {
  if (rec.completion_t <= cfg_.sim_time_s) {
    rec.t_d = rec.completion_t - rec.gen_t;
    rec.deadline_met = rec.t_d < pol_.deadline_s;
  } else {
    rec.in_flight = true;  // result lands after the horizon; not a drop
  }
}

void Engine::on_geometry_refresh(double t) {
  double jd = start_jd_ + t / SECONDS_PER_DAY;
  propagate_all(roster_, jd, snap_buf_, cfg_.kernel_threads);
  scan_visibility(snap_buf_, site_buf_, gv_ep_, sat_ep_, cfg_.channel,
                  cfg_.min_elevation_deg, vis_buf_, cfg_.kernel_threads);

  for (int g = 0; g < cfg_.n_gvs; ++g) {
    GvRuntime& gv = gvs_[g];
    gv.candidates.clear();
    gv.candidates.reserve(vis_buf_[g].size());
    for (const VisibleSat& v : vis_buf_[g])
      gv.candidates.push_back({catalog_ids_[v.sat_index], v.snr_db});
    // The policy walks this list with id-based tie-breaks; TLE files carry
    // no ordering promise, so impose one here.
    std::sort(gv.candidates.begin(), gv.candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                return a.sat_id < b.sat_id;
              });

    bool serving_visible = false;
    double serving_snr = -INF;
    for (const Candidate& c : gv.candidates)
      if (c.sat_id == gv.policy.serving_sat) {
        serving_visible = true;
        serving_snr = c.snr_db;
        break;
      }
    int before = gv.policy.serving_sat;
    maintain_association(gv.policy, serving_visible, serving_snr,
                         gv.candidates, pol_, sr_rng_);
    if (gv.policy.serving_sat != before) gv.last_fb_cum = NAN;
  }

  double t_next = static_cast<double>(++refresh_k_) * cfg_.geometry_refresh_s;
  if (t_next < cfg_.sim_time_s) schedule(t_next, kGeometryRefresh, -1, -1);
}

void Engine::on_frame_gen(double t, long frame_idx) {
  int g = static_cast<int>(frame_idx / frames_per_gv_);
  long seq = frame_idx % frames_per_gv_;
  GvRuntime& gv = gvs_[g];
  FrameRecord& rec = records_[frame_idx];
  rec.gv_id = g;
  rec.seq = seq;
  rec.gen_t = t;

  double t_hat_gv = INF;
  if (gv.local) {
    t_hat_gv = estimate_onboard_delay(*gv.local, t);
    rec.est_gv = t_hat_gv;
  }

  // Re-check the association against the live sky before deciding; the
  // candidate list may be up to one refresh old.  At most one handover per
  // frame: if the freshly picked satellite already set meanwhile, the frame
  // sees no coverage and the next refresh cleans up.
  PairLink pl;
  if (gv.policy.serving_sat >= 0)
    pl = eval_pair(id_to_index_.at(gv.policy.serving_sat), gv.site, t);
  int before = gv.policy.serving_sat;
  maintain_association(gv.policy, pl.visible, pl.snr_db, gv.candidates, pol_,
                       sr_rng_);
  if (gv.policy.serving_sat != before) {
    gv.last_fb_cum = NAN;
    pl = gv.policy.serving_sat >= 0
             ? eval_pair(id_to_index_.at(gv.policy.serving_sat), gv.site, t)
             : PairLink{};
  }
  bool has_serving = gv.policy.serving_sat >= 0 && pl.visible;

  double t_hat_leo = INF;
  if (has_serving) {
    double w_hat = 0.0;
    if (gv.policy.last_feedback) {
      FeedbackView fbv = *gv.policy.last_feedback;
      fbv.frames_sent_since = static_cast<int>(std::count_if(
          gv.policy.offload_times.begin(), gv.policy.offload_times.end(),
          [&](double ot) { return ot > fbv.sat_stamp_s; }));
      w_hat = estimate_queue_wait(&fbv, t, service_leo_s_, pol_.deadline_s);
      rec.fb_backlog = fbv.reported_backlog_s;
      rec.fb_stamp = fbv.sat_stamp_s;
      fb_cum_at_decision_[frame_idx] = gv.last_fb_cum;
    } else {
      w_hat = estimate_queue_wait(nullptr, t, service_leo_s_, pol_.deadline_s);
    }
    t_hat_leo =
        estimate_offload_delay(pl.tau_p, pl.t_ul, pl.t_dl, w_hat,
                               service_leo_s_);
    rec.est_leo = t_hat_leo;
  }

  FrameDecision fd = decide_frame(t_hat_gv, has_serving, t_hat_leo, gv.policy,
                                  pol_, light_rng_, backoff_rng_);
  rec.decision = fd.decision;
  rec.drop_reason = fd.reason;

  switch (fd.decision) {
    case Decision::Onboard: {
      WorkQueue::Enqueued enq = gv.local->enqueue(t);
      rec.w_q = enq.wait_s;
      rec.completion_t = enq.completion_t;
      close_out(rec);
      break;
    }
    case Decision::Drop:
      fb_cum_at_decision_[frame_idx] = NAN;  // audit applies to offloads only
      break;
    case Decision::Offload: {
      rec.sat_id = gv.policy.serving_sat;
      rec.sat_index = id_to_index_.at(rec.sat_id);
      rec.t_ul = pl.t_ul;
      rec.t_dl = pl.t_dl;
      rec.tau_p = pl.tau_p;
      double ul_start = std::max(t, gv.radio_free_t);
      double ul_end = ul_start + pl.t_ul;
      gv.radio_free_t = ul_end;
      rec.sat_arrival_t = ul_end + pl.tau_p;
      gv.policy.offload_times.push_back(t);
      gv.policy.pending.push_back({frame_idx, t + pol_.deadline_s});
      schedule(rec.sat_arrival_t, kSatArrival, g, frame_idx);
      schedule(t + pol_.deadline_s, kFeedbackTimeout, g, frame_idx);
      break;
    }
  }

  if (seq + 1 < frames_per_gv_)
    schedule(static_cast<double>(seq + 1) / cfg_.frame_rate_fps, kFrameGen, g,
             frame_idx + 1);
}

void Engine::on_sat_arrival(double t, long frame_idx) {
  FrameRecord& rec = records_[frame_idx];
  SatRuntime& sat = sats_[rec.sat_index];

  if (!std::isnan(fb_cum_at_decision_[frame_idx]))
    rec.admitted_since_stamp =
        sat.cum_admitted_s - fb_cum_at_decision_[frame_idx];

  WorkQueue::Enqueued enq = sat.queue.enqueue(t);
  rec.w_q = enq.wait_s;
  rec.completion_t = enq.completion_t + rec.t_dl + rec.tau_p;
  close_out(rec);
  sat.arrivals += 1;
  sat.cum_admitted_s += service_leo_s_;

  // The satellite reports its backlog as-admitted; the GV sees it one
  // propagation leg later (frozen at the frame's decision, like the rest of
  // its link numbers).
  FeedbackView fb;
  fb.sat_id = rec.sat_id;
  fb.seq = frame_idx;
  fb.reported_backlog_s = sat.queue.backlog_s(t);
  fb.sat_stamp_s = t;
  fb.received_s = t + rec.tau_p;
  fb.frames_sent_since = 0;
  schedule_feedback(fb.received_s, rec.gv_id, fb, sat.cum_admitted_s);
}

SimReport Engine::run() {
  auto wall0 = std::chrono::steady_clock::now();
  init();

  while (!heap_.empty()) {
    Event ev = heap_.top();
    heap_.pop();
    if (ev.t > cfg_.sim_time_s) break;  // heap order: everything later, too
    switch (ev.type) {
      case kGeometryRefresh:
        on_geometry_refresh(ev.t);
        break;
      case kSatArrival:
        on_sat_arrival(ev.t, ev.frame);
        break;
      case kFeedbackArrival: {
        GvRuntime& gv = gvs_[ev.gv];
        on_feedback_arrival(gv.policy, ev.fb);
        const auto& lf = gv.policy.last_feedback;
        if (lf && lf->seq == ev.fb.seq &&
            lf->sat_stamp_s == ev.fb.sat_stamp_s)
          gv.last_fb_cum = ev.fb_cum;
        break;
      }
      case kFeedbackTimeout:
        on_feedback_timeout(gvs_[ev.gv].policy, ev.frame, pol_, backoff_rng_);
        break;
      case kFrameGen:
        on_frame_gen(ev.t, ev.frame);
        break;
    }
  }

  // Offloads whose frame never reached the satellite inside the window.
  for (FrameRecord& rec : records_)
    if (rec.decision == Decision::Offload && std::isnan(rec.w_q))
      rec.in_flight = true;

  SimReport report;
  report.frames = std::move(records_);
  report.agg = compute_metrics(report.frames, pol_.deadline_s, cfg_.sim_time_s,
                               service_leo_s_);
  report.seed = cfg_.seed;
  report.constellation_n = static_cast<int>(roster_.size());
  report.config = cfg_;
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0)
          .count();
  return report;
}

double quantile_sorted(const std::vector<double>& v, double p) {
  if (v.empty()) return NAN;
  double h = p * static_cast<double>(v.size() - 1);
  size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= v.size()) return v.back();
  double frac = h - static_cast<double>(lo);
  return v[lo] + (v[lo + 1] - v[lo]) * frac;
}

}  // namespace

SimReport run_simulation(const ScenarioConfig& cfg) {
  return Engine(cfg).run();
}

Aggregates compute_metrics(const std::vector<FrameRecord>& frames,
                           double deadline_s, double window_s,
                           double service_leo_s) {
  Aggregates a;
  a.generated = static_cast<long>(frames.size());
  std::map<int, long> arrivals;  // catalog id -> frames admitted in-window
  std::vector<double> delays;
  for (const FrameRecord& rec : frames) {
    switch (rec.decision) {
      case Decision::Onboard:
        ++a.onboard;
        break;
      case Decision::Offload:
        ++a.offloaded;
        if (!std::isnan(rec.w_q)) ++arrivals[rec.sat_id];
        break;
      case Decision::Drop:
        ++a.dropped;
        switch (rec.drop_reason) {
          case DropReason::Backoff: ++a.drop_backoff; break;
          case DropReason::NoCoverage: ++a.drop_no_coverage; break;
          case DropReason::Overload: ++a.drop_overload; break;
          case DropReason::LightDrop: ++a.drop_light; break;
          case DropReason::None: break;
        }
        break;
    }
    if (rec.in_flight) {
      ++a.in_flight;
    } else if (rec.decision != Decision::Drop &&
               !std::isnan(rec.completion_t)) {
      ++a.completed;
      delays.push_back(rec.t_d);
      if (rec.deadline_met) ++a.deadline_met;
    }
  }
  (void)deadline_s;  // already baked into deadline_met at close-out

  if (a.generated > 0) {
    double n = static_cast<double>(a.generated);
    a.p_rt = static_cast<double>(a.deadline_met) / n;
    a.p_d = static_cast<double>(a.dropped) / n;
    a.frac_onboard = static_cast<double>(a.onboard) / n;
    a.frac_offload = static_cast<double>(a.offloaded) / n;
    a.frac_drop = static_cast<double>(a.dropped) / n;
  }

  std::sort(delays.begin(), delays.end());
  a.delay.count = static_cast<long>(delays.size());
  if (!delays.empty()) {
    a.delay.min = delays.front();
    a.delay.q1 = quantile_sorted(delays, 0.25);
    a.delay.median = quantile_sorted(delays, 0.5);
    a.delay.q3 = quantile_sorted(delays, 0.75);
    a.delay.max = delays.back();
  }

  double rho_sum = 0.0;
  for (const auto& [id, count] : arrivals) {
    double rho = static_cast<double>(count) * service_leo_s / window_s;
    a.rho_per_sat.emplace_back(id, rho);
    rho_sum += rho;
  }
  if (!a.rho_per_sat.empty())
    a.rho_mean = rho_sum / static_cast<double>(a.rho_per_sat.size());
  return a;
}

// ---------------------------------------------------------------------------
// Output writers.
// ---------------------------------------------------------------------------

namespace {

std::string fmt_d(double v) {
  if (std::isnan(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

const char* decision_str(Decision d) {
  switch (d) {
    case Decision::Onboard: return "onboard";
    case Decision::Offload: return "offload";
    case Decision::Drop: return "drop";
  }
  return "?";
}

const char* reason_str(DropReason r) {
  switch (r) {
    case DropReason::None: return "";
    case DropReason::Backoff: return "backoff";
    case DropReason::NoCoverage: return "no_coverage";
    case DropReason::Overload: return "overload";
    case DropReason::LightDrop: return "light_drop";
  }
  return "?";
}

}  // namespace

void write_frames_csv(std::ostream& os,
                      const std::vector<FrameRecord>& frames) {
  os << "gv_id,seq,gen_t,decision,sat_id,t_ul,t_dl,w_q,t_d,deadline_met,"
        "drop_reason\n";
  for (const FrameRecord& rec : frames) {
    os << rec.gv_id << ',' << rec.seq << ',' << fmt_d(rec.gen_t) << ','
       << decision_str(rec.decision) << ',';
    if (rec.sat_id >= 0) os << rec.sat_id;
    os << ',' << fmt_d(rec.t_ul) << ',' << fmt_d(rec.t_dl) << ','
       << fmt_d(rec.w_q) << ',' << fmt_d(rec.t_d) << ','
       << (rec.deadline_met ? 1 : 0) << ',' << reason_str(rec.drop_reason)
       << '\n';
  }
}

std::string frames_csv(const std::vector<FrameRecord>& frames) {
  std::ostringstream os;
  write_frames_csv(os, frames);
  return os.str();
}

nlohmann::json summary_json(const SimReport& report) {
  const Aggregates& a = report.agg;
  nlohmann::json delay = {
      {"count", a.delay.count}, {"min", a.delay.min},   {"q1", a.delay.q1},
      {"median", a.delay.median}, {"q3", a.delay.q3},   {"max", a.delay.max},
  };
  nlohmann::json rho = nlohmann::json::array();
  for (const auto& [id, value] : a.rho_per_sat)
    rho.push_back({{"sat_id", id}, {"rho", value}});
  nlohmann::json agg = {
      {"generated", a.generated},
      {"onboard", a.onboard},
      {"offloaded", a.offloaded},
      {"dropped", a.dropped},
      {"completed", a.completed},
      {"in_flight", a.in_flight},
      {"deadline_met", a.deadline_met},
      {"drop_backoff", a.drop_backoff},
      {"drop_no_coverage", a.drop_no_coverage},
      {"drop_overload", a.drop_overload},
      {"drop_light", a.drop_light},
      {"p_rt", a.p_rt},
      {"p_d", a.p_d},
      {"frac_onboard", a.frac_onboard},
      {"frac_offload", a.frac_offload},
      {"frac_drop", a.frac_drop},
      {"delay_s", delay},
      {"rho_mean", a.rho_mean},
      {"rho_per_sat", rho},
  };
  return nlohmann::json{
      {"version", VERSION},
      {"seed", report.seed},
      {"constellation_n", report.constellation_n},
      {"wall_time_s", report.wall_time_s},
      {"config", scenario_to_json(report.config)},
      {"aggregates", agg},
  };
}

// ---------------------------------------------------------------------------
// Geometry traces.
// ---------------------------------------------------------------------------

namespace {

struct TraceSetup {
  Roster roster;
  GroundSite site;
};

TraceSetup trace_setup(const ScenarioConfig& cfg) {
  return {load_roster(cfg),
          make_site(cfg.gv_center_lat_deg, cfg.gv_center_lon_deg)};
}

}  // namespace

std::vector<TraceSample> elevation_trace(const ScenarioConfig& cfg,
                                         const std::vector<int>& sat_ids,
                                         double duration_s, double step_s) {
  if (step_s <= 0.0 || duration_s < 0.0)
    throw EngineError("trace needs step_s > 0 and duration_s >= 0");
  TraceSetup ts = trace_setup(cfg);

  std::unordered_map<int, int> id_to_index;
  for (int i = 0; i < static_cast<int>(ts.roster.catalog_ids.size()); ++i)
    id_to_index.emplace(ts.roster.catalog_ids[i], i);

  // (catalog id, roster index) pairs, id-ascending for stable row order.
  std::vector<std::pair<int, int>> chosen;
  if (sat_ids.empty()) {
    // Default: whatever is above the horizon at the window start.
    for (int i = 0; i < static_cast<int>(ts.roster.elements.size()); ++i) {
      SatelliteState st = propagate(ts.roster.elements[i], ts.roster.start_jd);
      double cos_alpha = central_angle_cos(ts.site.lat_deg, ts.site.lon_deg,
                                           st.lat_deg, st.lon_deg);
      if (cos_alpha > horizon_cos(st.alt_km))
        chosen.emplace_back(ts.roster.catalog_ids[i], i);
    }
    if (chosen.empty())
      throw EngineError(
          "no satellite is above the horizon at the trace start");
  } else {
    for (int id : sat_ids) {
      auto it = id_to_index.find(id);
      if (it == id_to_index.end())
        throw ConfigError("satellite " + std::to_string(id) +
                          " is not in the constellation");
      chosen.emplace_back(id, it->second);
    }
  }
  std::sort(chosen.begin(), chosen.end());

  std::vector<TraceSample> out;
  long steps = static_cast<long>(std::floor(duration_s / step_s + 1e-9));
  for (long k = 0; k <= steps; ++k) {
    double t = static_cast<double>(k) * step_s;
    double jd = ts.roster.start_jd + t / SECONDS_PER_DAY;
    for (const auto& [id, idx] : chosen) {
      SatelliteState st = propagate(ts.roster.elements[idx], jd);
      double cos_alpha = central_angle_cos(ts.site.lat_deg, ts.site.lon_deg,
                                           st.lat_deg, st.lon_deg);
      if (cos_alpha <= horizon_cos(st.alt_km)) continue;
      double slant = slant_range_km(st.alt_km, cos_alpha);
      out.push_back({t, id, elevation_deg(st.alt_km, cos_alpha, slant), slant});
    }
  }
  return out;
}

std::vector<PassInterval> elevation_pass_intervals(const ScenarioConfig& cfg,
                                                   double min_elevation_deg,
                                                   double duration_s,
                                                   double step_s) {
  if (step_s <= 0.0 || duration_s <= 0.0)
    throw EngineError("pass scan needs step_s > 0 and duration_s > 0");
  TraceSetup ts = trace_setup(cfg);
  int n = static_cast<int>(ts.roster.elements.size());
  long steps = static_cast<long>(std::floor(duration_s / step_s + 1e-9));

  std::vector<std::vector<PassInterval>> per_sat(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n; ++i) {
    bool above = false;
    double run_start = 0.0, last_above = 0.0;
    for (long k = 0; k <= steps; ++k) {
      double t = static_cast<double>(k) * step_s;
      SatelliteState st = propagate(ts.roster.elements[i],
                                    ts.roster.start_jd + t / SECONDS_PER_DAY);
      double cos_alpha = central_angle_cos(ts.site.lat_deg, ts.site.lon_deg,
                                           st.lat_deg, st.lon_deg);
      bool ok = cos_alpha > horizon_cos(st.alt_km);
      if (ok) {
        double slant = slant_range_km(st.alt_km, cos_alpha);
        ok = elevation_deg(st.alt_km, cos_alpha, slant) >= min_elevation_deg;
      }
      if (ok && !above) {
        above = true;
        run_start = t;
      }
      if (ok) last_above = t;
      if (!ok && above) {
        above = false;
        per_sat[i].push_back({ts.roster.catalog_ids[i], run_start, last_above,
                              run_start == 0.0});
      }
    }
    if (above)
      per_sat[i].push_back(
          {ts.roster.catalog_ids[i], run_start, last_above, true});
  }

  std::vector<PassInterval> out;
  for (const auto& v : per_sat) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end(), [](const PassInterval& a,
                                       const PassInterval& b) {
    if (a.sat_id != b.sat_id) return a.sat_id < b.sat_id;
    return a.start_s < b.start_s;
  });
  return out;
}

}  // namespace leovec
