#pragma once

#include <optional>
#include <vector>

#include "leovec/errors.hpp"
#include "leovec/queueing.hpp"
#include "leovec/rng.hpp"

namespace leovec {

struct PolicyError : Error {
  using Error::Error;
};

enum class SelectionPolicy { MaxSnr, SatRandomized };       // MS, SR
enum class OffloadPolicy { BackoffOnly, LightDropBackoff };  // BOO, LDBOO

struct PolicyConfig {
  SelectionPolicy selection = SelectionPolicy::MaxSnr;
  OffloadPolicy offload = OffloadPolicy::BackoffOnly;
  double sigma = 4.0;            // light-drop steepness
  int backoff_max_frames = 10;   // back-off draw upper bound, in frames
  double snr_serve_th_db = 0.0;  // association kept while SNR exceeds this
  double snr_select_th_db = 10.0;  // SR draws among satellites above this
  double deadline_s = 0.15;

  void validate() const;
  bool operator==(const PolicyConfig&) const = default;
};

struct Candidate {
  int sat_id = -1;
  double snr_db = 0.0;
};

struct PendingFeedback {
  long seq = -1;
  double deadline_t = 0.0;
};

// Per-GV offloading state. Feedback bookkeeping is per association and is
// reset on handover; the back-off counter suspends the GV's own uplink and
// survives a handover.
struct GvPolicyState {
  int serving_sat = -1;
  int backoff_frames_left = 0;
  std::optional<FeedbackView> last_feedback;
  std::vector<PendingFeedback> pending;     // awaited feedback deadlines
  std::vector<double> offload_times;        // decision times of own offloads
};

// Picks a serving satellite from the current candidate list (engine supplies
// it ordered by satellite id). MS: highest SNR above the serve threshold,
// ties to the lowest id. SR: uniform over satellites above the select
// threshold, falling back to the MS rule when that set is empty. Returns -1
// when nothing passes the serve threshold.
int select_satellite(const std::vector<Candidate>& visible,
                     const PolicyConfig& cfg, Pcg32& sr_rng);

// Re-checks the association: when the serving satellite dropped out of the
// candidate set or its SNR fell to the serve threshold, hands over via
// select_satellite and resets the per-association feedback state.
void maintain_association(GvPolicyState& state, bool serving_visible,
                          double serving_snr_db,
                          const std::vector<Candidate>& visible,
                          const PolicyConfig& cfg, Pcg32& sr_rng);

// Light-drop probability min(1, (t_hat / deadline)^sigma).
double drop_probability(double t_hat_leo_s, double deadline_s, double sigma);

// Uniform back-off length in {1, ..., max_frames}.
int draw_backoff(Pcg32& rng, int max_frames);

struct FrameDecision {
  Decision decision = Decision::Drop;
  DropReason reason = DropReason::None;
};

// The per-frame decision ladder, evaluated at frame generation:
//   1. onboard when the local estimate beats the deadline
//   2. while backing off, drop (one frame per backed-off slot)
//   3. no serving satellite: drop
//   4. offload estimate past the deadline: drop and start a back-off
//   5. LDBOO only: early drop with drop_probability (no back-off)
//   6. offload
// t_hat_leo is ignored unless has_serving.
FrameDecision decide_frame(double t_hat_gv_s, bool has_serving,
                           double t_hat_leo_s, GvPolicyState& state,
                           const PolicyConfig& cfg, Pcg32& light_drop_rng,
                           Pcg32& backoff_rng);

// Feedback arrival at the GV. Reports from a satellite other than the
// current serving one are stale and ignored; newer measurements replace the
// stored view and settle the matching pending deadline.
void on_feedback_arrival(GvPolicyState& state, const FeedbackView& fb);

// Deadline expiry for an offloaded frame's feedback. A miss clears the
// pending list and draws a back-off unless one is already running (timers
// keep running during a back-off, but draws do not nest).
void on_feedback_timeout(GvPolicyState& state, long seq,
                         const PolicyConfig& cfg, Pcg32& backoff_rng);

}  // namespace leovec
