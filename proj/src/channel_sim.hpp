#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "core_state.hpp"
#include "idnc_graph.hpp"
#include "policies.hpp"
#include "rng.hpp"

namespace idnc {

inline constexpr DelayCount kNoDeadline = std::numeric_limits<DelayCount>::max();

struct SimConfig {
  ReceiverId receivers = 0;
  PacketId packets = 0;
  double avg_erasure = 0.0;
  DelayCount deadline = kNoDeadline;  // a receiver is served iff it finishes with delay <= deadline
  std::uint32_t frames = 1;
  std::uint64_t seed = 0;
  PolicyKind policy = PolicyKind::kMddGreedy;
  std::uint64_t max_transmissions = 0;  // 0 selects the default cap of 100 * packets
  std::size_t clique_enumeration_bound = kDefaultCliqueEnumerationBound;

  std::uint64_t effective_max_transmissions() const {
    return max_transmissions != 0 ? max_transmissions : 100ull * packets;
  }
  void validate() const;  // invalid_argument / ResourceLimitError on bad fields
};

struct FrameResult {
  std::vector<DelayCount> per_receiver_delay;
  DelayCount sum_delay = 0;
  DelayCount max_delay = 0;
  std::uint32_t served_count = 0;  // wants empty and delay within the deadline
  std::uint64_t recovery_transmissions = 0;
  bool completed = true;  // false iff the transmission cap cut the frame short
};

struct ExperimentStats {
  double mean_sum_delay = 0.0;
  double mean_max_delay = 0.0;
  double mean_served_fraction = 0.0;
  double mean_recovery_transmissions = 0.0;
  std::uint64_t frame_count = 0;
};

// Sender's view of one frame in flight.
struct SessionState {
  FeedbackMatrix feedback;
  std::vector<ReceiverState> receivers;

  std::vector<DelayCount> delays() const;
  std::vector<double> erasure_probs() const;
  DelayCount max_delay() const;
};

struct TransmitOutcome {
  std::vector<int> delay_increments;      // 0 or 1 per receiver
  bool max_delay_increased = false;
};

// Per-frame erasure probabilities, each uniform on [P - s, P + s] with
// s = min(P, 1 - P, 0.15), so the frame average stays at P.
std::vector<double> draw_frame_erasures(double avg_erasure, ReceiverId receiver_count,
                                        const FrameRng& rng);

// Uncoded broadcast of the whole frame; an erased packet becomes a Wants
// entry. No decoding delay accrues here.
FeedbackMatrix run_initial_phase(const SimConfig& config, std::span<const double> erasure_probs,
                                 const FrameRng& rng);

// One coded transmission: each receiver independently erases with its p_i;
// successful receptions decode or take delay, acknowledgments land
// immediately. `transmission` indexes the erasure substream.
TransmitOutcome transmit_once(SessionState& state, const Clique& clique, const FrameRng& rng,
                              std::uint64_t transmission);

// Coded retransmissions until every Wants set empties or the cap is hit.
// The deadline never truncates the frame; it only filters served_count.
FrameResult run_recovery_phase(SessionState& state, const SimConfig& config,
                               const FrameRng& rng);

// Full lifecycle of one frame under the frame's own substream.
FrameResult run_frame(const SimConfig& config, std::uint64_t frame_index);

// All frames, averaged. Frames run independently (possibly in parallel) and
// aggregate in frame order, so results are a pure function of the config.
ExperimentStats run_experiment(const SimConfig& config);

}  // namespace idnc
