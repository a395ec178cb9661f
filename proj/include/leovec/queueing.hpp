#pragma once

#include <cmath>
#include <limits>

#include "leovec/errors.hpp"

namespace leovec {

struct QueueError : Error {
  using Error::Error;
};

enum class Decision { Onboard, Offload, Drop };

enum class DropReason {
  None,
  Backoff,     // GV communication suspended after a feedback timeout
  NoCoverage,  // no satellite passes the serve threshold
  Overload,    // estimated delay past the deadline, back-off triggered
  LightDrop    // probabilistic early drop (LDBOO)
};

// Deterministic service time of one frame on a processor.
double service_time_s(double load_tflop, double capacity_tflops);

// FIFO queue with deterministic service. Because every job carries the same
// service time, the whole state collapses to the arrival that is currently
// last in line: backlog at any t is max(0, W + S - (t - last_arrival)).
class WorkQueue {
 public:
  explicit WorkQueue(double service_s);

  struct Enqueued {
    double wait_s;
    double completion_t;
  };

  // Admits one frame at t_now (arrivals must be non-decreasing) and returns
  // its queueing wait and completion timestamp.
  Enqueued enqueue(double t_now);

  // Unfinished work in seconds as seen by an arrival at t_now.
  double backlog_s(double t_now) const;

  double service_s() const { return service_s_; }
  long arrived() const { return arrived_; }
  long served_before(double t) const;
  double busy_seconds() const { return busy_s_; }
  double last_completion_t() const;

 private:
  double service_s_;
  double last_arrival_t_ = -std::numeric_limits<double>::infinity();
  double last_wait_s_ = 0.0;  // wait experienced by the latest arrival
  long arrived_ = 0;
  double busy_s_ = 0.0;
};

// Queue-state report a satellite sends back after admitting a frame.
struct FeedbackView {
  int sat_id = -1;
  long seq = -1;                   // frame that triggered this report
  double reported_backlog_s = 0.0;  // backlog right after that enqueue
  double sat_stamp_s = 0.0;         // when the satellite measured it
  double received_s = 0.0;          // when the GV received it
  int frames_sent_since = 0;        // this GV's offloads after sat_stamp_s
};

// Exact local estimate: current backlog plus one service.
double estimate_onboard_delay(const WorkQueue& q, double t_now);

// Satellite-wait estimate from the latest feedback: the reported backlog
// drained by its age, plus own frames sent since the measurement. Feedback
// older than the deadline is obsolete and contributes nothing; fb == nullptr
// means no feedback yet.
double estimate_queue_wait(const FeedbackView* fb, double t_now,
                           double service_leo_s, double deadline_s);

// Round-trip offload estimate: two propagation legs, both transmissions,
// the estimated satellite wait and one service.
double estimate_offload_delay(double tau_p_s, double t_ul_s, double t_dl_s,
                              double queue_wait_s, double service_leo_s);

}  // namespace leovec
