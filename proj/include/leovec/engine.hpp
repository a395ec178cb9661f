#pragma once

// ---------------------------------------------------------------------------
// Discrete-event simulation engine.
//
// A single-threaded event loop drives frame generation, offloading decisions,
// satellite queueing, and the feedback channel.  All randomness comes from
// named PCG streams derived from the scenario seed, and events at equal
// timestamps are ordered by a fixed type priority plus an insertion sequence
// number, so a given scenario+seed always produces the same frame table,
// byte for byte.  Geometry and link kernels may run multi-threaded; they only
// fill per-slot buffers and never reorder anything observable.
// ---------------------------------------------------------------------------

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "leovec/errors.hpp"
#include "leovec/queueing.hpp"
#include "leovec/scenario.hpp"

namespace leovec {

struct EngineError : Error {
  using Error::Error;
};

// Everything we know about one generated frame once the run is over.
// Timestamps are seconds from simulation start; NaN marks "not applicable"
// (e.g. no uplink time for an onboard frame).
struct FrameRecord {
  int gv_id = -1;
  long seq = -1;
  double gen_t = 0.0;
  Decision decision = Decision::Drop;
  DropReason drop_reason = DropReason::None;
  int sat_id = -1;      // catalog number of the serving satellite, -1 if none
  int sat_index = -1;   // roster index, for internal bookkeeping
  double t_ul = NAN;    // uplink transmission time, frozen at decision time
  double t_dl = NAN;    // downlink transmission time, frozen at decision time
  double tau_p = NAN;   // one-way propagation delay, frozen at decision time
  double w_q = NAN;     // queue wait actually experienced at the processor
  double t_d = NAN;     // end-to-end delay, only for frames completed in-window
  double completion_t = NAN;
  double sat_arrival_t = NAN;  // when the frame entered the satellite queue
  bool deadline_met = false;
  bool in_flight = false;  // still being processed when the horizon closed
  // Decision-time estimator audit trail.
  double est_gv = NAN;
  double est_leo = NAN;
  double fb_backlog = NAN;            // reported backlog the estimate used
  double fb_stamp = NAN;              // satellite-side stamp of that report
  double admitted_since_stamp = NAN;  // work the satellite actually admitted
                                      // in (fb_stamp, sat_arrival_t)
};

struct DelayQuantiles {
  double min = NAN, q1 = NAN, median = NAN, q3 = NAN, max = NAN;
  long count = 0;
};

struct Aggregates {
  long generated = 0;
  long onboard = 0, offloaded = 0, dropped = 0;
  long completed = 0, in_flight = 0, deadline_met = 0;
  long drop_backoff = 0, drop_no_coverage = 0, drop_overload = 0,
       drop_light = 0;
  double p_rt = 0.0;  // completed within deadline / generated
  double p_d = 0.0;   // dropped / generated
  double frac_onboard = 0.0, frac_offload = 0.0, frac_drop = 0.0;
  DelayQuantiles delay;  // over in-window completed frames
  double rho_mean = 0.0;  // mean utilisation over satellites that saw traffic
  std::vector<std::pair<int, double>> rho_per_sat;  // (catalog id, rho)
};

struct SimReport {
  std::vector<FrameRecord> frames;  // ordered by (gv_id, seq)
  Aggregates agg;
  std::uint64_t seed = 0;
  int constellation_n = 0;  // satellites actually in the roster
  double wall_time_s = 0.0;
  ScenarioConfig config;  // effective configuration the run used
};

// Runs one simulation to completion.  Throws ConfigError / OrbitError /
// LinkError on bad input; never throws on any in-spec scenario.
SimReport run_simulation(const ScenarioConfig& cfg);

// Aggregation is separable from the run so tests can feed synthetic tables.
Aggregates compute_metrics(const std::vector<FrameRecord>& frames,
                           double deadline_s, double window_s,
                           double service_leo_s);

// Frame table as CSV.  Column set and formatting are part of the output
// contract: reruns of the same scenario+seed must be byte-identical.
void write_frames_csv(std::ostream& os, const std::vector<FrameRecord>& frames);
std::string frames_csv(const std::vector<FrameRecord>& frames);

// Machine-readable run summary (aggregates + config echo + provenance).
nlohmann::json summary_json(const SimReport& report);

// ---------------------------------------------------------------------------
// Geometry traces (no queueing): elevation profiles and pass statistics as
// seen from the fleet centre.  Used by the trace-elevation command and by
// long-horizon visibility checks.
// ---------------------------------------------------------------------------

struct TraceSample {
  double t_s = 0.0;
  int sat_id = -1;
  double elevation_deg = 0.0;
  double slant_km = 0.0;
};

// Samples elevation/slant range every step_s over [0, duration_s] for the
// given catalog ids (empty -> every satellite above the horizon at t = 0).
// Emits rows only while the satellite is above the horizon, ordered by time
// then catalog id.
std::vector<TraceSample> elevation_trace(const ScenarioConfig& cfg,
                                         const std::vector<int>& sat_ids,
                                         double duration_s, double step_s);

struct PassInterval {
  int sat_id = -1;
  double start_s = 0.0, end_s = 0.0;
  bool clipped = false;  // touches the window edge; duration is censored
};

// Contiguous intervals with elevation >= min_elevation_deg, sampled at
// step_s over [0, duration_s], for every satellite in the scenario's
// constellation.  Sorted by (sat_id, start_s).
std::vector<PassInterval> elevation_pass_intervals(const ScenarioConfig& cfg,
                                                   double min_elevation_deg,
                                                   double duration_s,
                                                   double step_s);

}  // namespace leovec
