#include "leovec/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace leovec {

void PolicyConfig::validate() const {
  if (deadline_s <= 0.0)
    throw PolicyError("deadline_s must be positive, got " +
                      std::to_string(deadline_s));
  if (sigma <= 0.0)
    throw PolicyError("sigma must be positive, got " + std::to_string(sigma));
  if (backoff_max_frames < 1)
    throw PolicyError("backoff_max_frames must be at least 1, got " +
                      std::to_string(backoff_max_frames));
  if (snr_select_th_db < snr_serve_th_db)
    throw PolicyError("snr_select_th_db must not be below snr_serve_th_db");
}

namespace {

int pick_max_snr(const std::vector<Candidate>& visible, double threshold_db) {
  int best = -1;
  double best_snr = 0.0;
  for (const Candidate& c : visible) {
    if (c.snr_db <= threshold_db) continue;
    if (best < 0 || c.snr_db > best_snr ||
        (c.snr_db == best_snr && c.sat_id < best)) {
      best = c.sat_id;
      best_snr = c.snr_db;
    }
  }
  return best;
}

void reset_association_state(GvPolicyState& state) {
  state.last_feedback.reset();
  state.pending.clear();
  state.offload_times.clear();
}

}  // namespace

int select_satellite(const std::vector<Candidate>& visible,
                     const PolicyConfig& cfg, Pcg32& sr_rng) {
  if (cfg.selection == SelectionPolicy::SatRandomized) {
    int eligible = 0;
    for (const Candidate& c : visible)
      if (c.snr_db > cfg.snr_select_th_db) ++eligible;
    if (eligible > 0) {
      uint32_t pick = sr_rng.next_below(static_cast<uint32_t>(eligible));
      for (const Candidate& c : visible) {
        if (c.snr_db <= cfg.snr_select_th_db) continue;
        if (pick == 0) return c.sat_id;
        --pick;
      }
    }
    // Nothing above the select threshold: fall back to the MS rule.
  }
  return pick_max_snr(visible, cfg.snr_serve_th_db);
}

void maintain_association(GvPolicyState& state, bool serving_visible,
                          double serving_snr_db,
                          const std::vector<Candidate>& visible,
                          const PolicyConfig& cfg, Pcg32& sr_rng) {
  if (state.serving_sat >= 0 && serving_visible &&
      serving_snr_db > cfg.snr_serve_th_db)
    return;  // association holds
  int next = select_satellite(visible, cfg, sr_rng);
  if (next != state.serving_sat) {
    state.serving_sat = next;
    reset_association_state(state);
  }
}

double drop_probability(double t_hat_leo_s, double deadline_s, double sigma) {
  if (t_hat_leo_s <= 0.0) return 0.0;
  double p = std::pow(t_hat_leo_s / deadline_s, sigma);
  return p < 1.0 ? p : 1.0;
}

int draw_backoff(Pcg32& rng, int max_frames) {
  return 1 + static_cast<int>(rng.next_below(static_cast<uint32_t>(max_frames)));
}

FrameDecision decide_frame(double t_hat_gv_s, bool has_serving,
                           double t_hat_leo_s, GvPolicyState& state,
                           const PolicyConfig& cfg, Pcg32& light_drop_rng,
                           Pcg32& backoff_rng) {
  if (t_hat_gv_s < cfg.deadline_s) return {Decision::Onboard, DropReason::None};

  if (state.backoff_frames_left > 0) {
    --state.backoff_frames_left;
    return {Decision::Drop, DropReason::Backoff};
  }

  if (!has_serving) return {Decision::Drop, DropReason::NoCoverage};

  if (t_hat_leo_s >= cfg.deadline_s) {
    state.backoff_frames_left = draw_backoff(backoff_rng, cfg.backoff_max_frames);
    return {Decision::Drop, DropReason::Overload};
  }

  if (cfg.offload == OffloadPolicy::LightDropBackoff) {
    double p = drop_probability(t_hat_leo_s, cfg.deadline_s, cfg.sigma);
    if (light_drop_rng.next_double() < p)
      return {Decision::Drop, DropReason::LightDrop};
  }

  return {Decision::Offload, DropReason::None};
}

void on_feedback_arrival(GvPolicyState& state, const FeedbackView& fb) {
  if (fb.sat_id != state.serving_sat) return;  // stale association

  auto it = std::find_if(state.pending.begin(), state.pending.end(),
                         [&](const PendingFeedback& p) { return p.seq == fb.seq; });
  if (it != state.pending.end()) state.pending.erase(it);

  if (!state.last_feedback || fb.sat_stamp_s >= state.last_feedback->sat_stamp_s) {
    state.last_feedback = fb;
    // Offloads at or before the new measurement are folded into the report.
    auto keep = std::remove_if(
        state.offload_times.begin(), state.offload_times.end(),
        [&](double t) { return t <= fb.sat_stamp_s; });
    state.offload_times.erase(keep, state.offload_times.end());
  }
}

void on_feedback_timeout(GvPolicyState& state, long seq,
                         const PolicyConfig& cfg, Pcg32& backoff_rng) {
  auto it = std::find_if(state.pending.begin(), state.pending.end(),
                         [&](const PendingFeedback& p) { return p.seq == seq; });
  if (it == state.pending.end()) return;  // already answered or reset
  state.pending.erase(it);
  if (state.backoff_frames_left == 0) {
    state.backoff_frames_left = draw_backoff(backoff_rng, cfg.backoff_max_frames);
    state.pending.clear();
  }
}

}  // namespace leovec
