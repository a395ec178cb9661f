#include "leovec/queueing.hpp"

#include <string>

namespace leovec {

double service_time_s(double load_tflop, double capacity_tflops) {
  if (capacity_tflops <= 0.0)
    throw QueueError("processor capacity must be positive, got " +
                     std::to_string(capacity_tflops));
  if (load_tflop < 0.0)
    throw QueueError("frame load must be non-negative, got " +
                     std::to_string(load_tflop));
  return load_tflop / capacity_tflops;
}

WorkQueue::WorkQueue(double service_s) : service_s_(service_s) {
  if (service_s <= 0.0)
    throw QueueError("service time must be positive, got " +
                     std::to_string(service_s));
}

double WorkQueue::backlog_s(double t_now) const {
  if (arrived_ == 0) return 0.0;
  double b = last_wait_s_ + service_s_ - (t_now - last_arrival_t_);
  return b > 0.0 ? b : 0.0;
}

WorkQueue::Enqueued WorkQueue::enqueue(double t_now) {
  if (arrived_ > 0 && t_now < last_arrival_t_)
    throw QueueError("arrival at t=" + std::to_string(t_now) +
                     " before previous arrival at t=" +
                     std::to_string(last_arrival_t_));
  double wait = backlog_s(t_now);
  last_arrival_t_ = t_now;
  last_wait_s_ = wait;
  ++arrived_;
  busy_s_ += service_s_;
  return {wait, t_now + wait + service_s_};
}

long WorkQueue::served_before(double t) const {
  double b = backlog_s(t);
  // Jobs still in the system = ceil(backlog / S); the epsilon absorbs the
  // rounding of the backlog subtraction so an exactly-finished job counts.
  long in_system = static_cast<long>(std::ceil(b / service_s_ - 1e-9));
  if (in_system < 0) in_system = 0;
  return arrived_ - in_system;
}

double WorkQueue::last_completion_t() const {
  if (arrived_ == 0) return -std::numeric_limits<double>::infinity();
  return last_arrival_t_ + last_wait_s_ + service_s_;
}

double estimate_onboard_delay(const WorkQueue& q, double t_now) {
  return q.backlog_s(t_now) + q.service_s();
}

double estimate_queue_wait(const FeedbackView* fb, double t_now,
                           double service_leo_s, double deadline_s) {
  if (fb == nullptr) return 0.0;
  double age = t_now - fb->sat_stamp_s;
  if (age > deadline_s) return 0.0;  // obsolete, assume an empty queue
  double drained = fb->reported_backlog_s - age;
  if (drained < 0.0) drained = 0.0;
  return drained + fb->frames_sent_since * service_leo_s;
}

double estimate_offload_delay(double tau_p_s, double t_ul_s, double t_dl_s,
                              double queue_wait_s, double service_leo_s) {
  return 2.0 * tau_p_s + t_ul_s + t_dl_s + queue_wait_s + service_leo_s;
}

}  // namespace leovec
