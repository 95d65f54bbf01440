#include "channel_sim.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace idnc {

void SimConfig::validate() const {
  if (receivers == 0) throw std::invalid_argument("receivers must be positive");
  if (packets == 0) throw std::invalid_argument("packets must be positive");
  if (frames == 0) throw std::invalid_argument("frames must be positive");
  if (!(avg_erasure >= 0.0 && avg_erasure <= 1.0))
    throw std::invalid_argument("avg_erasure outside [0, 1]");
  if (effective_max_transmissions() < packets)
    throw std::invalid_argument("max_transmissions must be at least the packet count");
  if (policy == PolicyKind::kMddExact || policy == PolicyKind::kSddExact) {
    const std::uint64_t worst_vertices = std::uint64_t{receivers} * packets;
    if (worst_vertices > clique_enumeration_bound)
      throw ResourceLimitError(
          "exact policies enumerate maximal cliques exhaustively; receivers x packets = " +
          std::to_string(worst_vertices) + " exceeds the bound of " +
          std::to_string(clique_enumeration_bound));
  }
}

std::vector<DelayCount> SessionState::delays() const {
  std::vector<DelayCount> out(receivers.size());
  for (std::size_t i = 0; i < receivers.size(); ++i) out[i] = receivers[i].cumulative_delay;
  return out;
}

std::vector<double> SessionState::erasure_probs() const {
  std::vector<double> out(receivers.size());
  for (std::size_t i = 0; i < receivers.size(); ++i) out[i] = receivers[i].erasure_prob;
  return out;
}

DelayCount SessionState::max_delay() const {
  DelayCount top = 0;
  for (const ReceiverState& r : receivers) top = std::max(top, r.cumulative_delay);
  return top;
}

std::vector<double> draw_frame_erasures(double avg_erasure, ReceiverId receiver_count,
                                        const FrameRng& rng) {
  if (!(avg_erasure >= 0.0 && avg_erasure <= 1.0))
    throw std::invalid_argument("avg_erasure outside [0, 1]");
  const double spread = std::min(avg_erasure, 1.0 - avg_erasure);
  std::vector<double> probs(receiver_count);
  for (ReceiverId i = 0; i < receiver_count; ++i)
    probs[i] = avg_erasure + spread * (2.0 * rng.erasure_prob_draw(i) - 1.0);
  return probs;
}

FeedbackMatrix run_initial_phase(const SimConfig& config, std::span<const double> erasure_probs,
                                 const FrameRng& rng) {
  if (erasure_probs.size() < config.receivers)
    throw std::invalid_argument("erasure probability missing for a receiver");
  FeedbackMatrix feedback(config.receivers, config.packets);
  for (ReceiverId i = 0; i < config.receivers; ++i)
    for (PacketId j = 0; j < config.packets; ++j)
      if (rng.initial_phase_draw(i, j) < erasure_probs[i]) feedback.set_wanted(i, j, true);
  return feedback;
}

TransmitOutcome transmit_once(SessionState& state, const Clique& clique, const FrameRng& rng,
                              std::uint64_t transmission) {
  if (clique.empty()) throw std::invalid_argument("cannot transmit an empty clique");
  const DelayCount max_before = state.max_delay();
  TransmitOutcome out;
  out.delay_increments.assign(state.receivers.size(), 0);
  for (ReceiverState& receiver : state.receivers) {
    const double draw = rng.recovery_draw(transmission, receiver.id);
    if (draw < receiver.erasure_prob) continue;  // erased in the air
    out.delay_increments[receiver.id] =
        apply_reception(state.feedback, receiver, clique.combo);
  }
  out.max_delay_increased = state.max_delay() > max_before;
  return out;
}

namespace {

Clique select_for_policy(const IdncGraph& graph, const SessionState& state,
                         const SimConfig& config) {
  const std::vector<DelayCount> delays = state.delays();
  const std::vector<double> probs = state.erasure_probs();
  switch (config.policy) {
    case PolicyKind::kMddGreedy:
      return select_clique_mdd(graph, delays, probs);
    case PolicyKind::kSddGreedy:
      return select_clique_sdd(graph, probs);
    case PolicyKind::kMddExact:
      return select_clique_exact(graph, delays, probs, DelayObjective::kMaxDelay,
                                 config.clique_enumeration_bound);
    case PolicyKind::kSddExact:
      return select_clique_exact(graph, delays, probs, DelayObjective::kSumDelay,
                                 config.clique_enumeration_bound);
  }
  throw std::invalid_argument("unknown policy");
}

}  // namespace

FrameResult run_recovery_phase(SessionState& state, const SimConfig& config,
                               const FrameRng& rng) {
  const std::uint64_t cap = config.effective_max_transmissions();
  std::uint64_t transmissions = 0;
  while (!state.feedback.all_satisfied() && transmissions < cap) {
    const IdncGraph graph = IdncGraph::build(state.feedback);
    const Clique clique = select_for_policy(graph, state, config);
    if (clique.empty()) break;  // cannot happen while wants remain
    transmit_once(state, clique, rng, transmissions);
    ++transmissions;
  }

  FrameResult result;
  result.per_receiver_delay = state.delays();
  result.recovery_transmissions = transmissions;
  result.completed = state.feedback.all_satisfied();
  for (const ReceiverState& r : state.receivers) {
    result.sum_delay += r.cumulative_delay;
    result.max_delay = std::max(result.max_delay, r.cumulative_delay);
    if (state.feedback.wants_empty(r.id) && r.cumulative_delay <= config.deadline)
      ++result.served_count;
  }
  return result;
}

FrameResult run_frame(const SimConfig& config, std::uint64_t frame_index) {
  config.validate();
  const FrameRng rng(config.seed, frame_index);
  const std::vector<double> probs = draw_frame_erasures(config.avg_erasure, config.receivers, rng);
  SessionState state{run_initial_phase(config, probs, rng), {}};
  state.receivers.reserve(config.receivers);
  for (ReceiverId i = 0; i < config.receivers; ++i) state.receivers.push_back({i, probs[i], 0});
  return run_recovery_phase(state, config, rng);
}

ExperimentStats run_experiment(const SimConfig& config) {
  config.validate();
  std::vector<FrameResult> results(config.frames);

  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, hw), config.frames);
  if (workers <= 1) {
    for (std::uint32_t f = 0; f < config.frames; ++f) results[f] = run_frame(config, f);
  } else {
    std::atomic<std::uint32_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      try {
        for (std::uint32_t f = next.fetch_add(1); f < config.frames; f = next.fetch_add(1))
          results[f] = run_frame(config, f);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Reduce in frame order so the result does not depend on thread scheduling.
  ExperimentStats stats;
  stats.frame_count = config.frames;
  for (const FrameResult& frame : results) {
    stats.mean_sum_delay += static_cast<double>(frame.sum_delay);
    stats.mean_max_delay += static_cast<double>(frame.max_delay);
    stats.mean_served_fraction +=
        static_cast<double>(frame.served_count) / static_cast<double>(config.receivers);
    stats.mean_recovery_transmissions += static_cast<double>(frame.recovery_transmissions);
  }
  const auto n = static_cast<double>(config.frames);
  stats.mean_sum_delay /= n;
  stats.mean_max_delay /= n;
  stats.mean_served_fraction /= n;
  stats.mean_recovery_transmissions /= n;
  return stats;
}

}  // namespace idnc
