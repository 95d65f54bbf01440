#pragma once

#include <span>
#include <vector>

#include "idnc_graph.hpp"

namespace idnc {

enum class PolicyKind {
  kMddGreedy,  // multilayer greedy minimizing the max-delay increase
  kSddGreedy,  // single-layer greedy minimizing the expected sum-delay increase
  kMddExact,   // exhaustive search over maximal cliques, max-delay objective
  kSddExact    // exhaustive search over maximal cliques, sum-delay objective
};

enum class DelayObjective { kMaxDelay, kSumDelay };

// Erasure probabilities below this are clamped before taking logs; the
// simulation itself may legitimately use 0.
inline constexpr double kMinErasureForWeights = 1e-6;

// -ln(p), the log reception-failure weight. Requires p in [0, 1].
double mdd_vertex_weight(double erasure_prob);

// 1 - p, the reception probability. Requires p in [0, 1].
double sdd_vertex_weight(double erasure_prob);

// Per-vertex base weights from per-receiver erasure probabilities.
std::vector<double> mdd_base_weights(const IdncGraph& graph,
                                     std::span<const double> erasure_probs);
std::vector<double> sdd_base_weights(const IdncGraph& graph,
                                     std::span<const double> erasure_probs);

// Combined greedy weight (base + 1) * sum of base weights over the neighbors
// inside `active`. Entries outside `active` are 0. Recomputed against the
// current working subgraph after every restriction.
std::vector<double> modified_weights(const IdncGraph& graph, const VertexSet& active,
                                     std::span<const double> base);

// Probability that the maximum cumulative delay grows by this transmission:
// 1 - prod of p_i over max-delay wanting receivers the clique misses.
double max_delay_increase_probability(const Clique& clique,
                                      std::span<const ReceiverId> max_delay_receivers,
                                      std::span<const ReceiverId> wanting,
                                      std::span<const double> erasure_probs);

// Expected total delay increment: sum of (1 - p_i) over wanting receivers the
// clique misses.
double expected_sum_delay_increase(const Clique& clique, std::span<const ReceiverId> wanting,
                                   std::span<const double> erasure_probs);

// Receivers holding the maximum delay (ties included), ascending.
std::vector<ReceiverId> max_delay_receivers(std::span<const DelayCount> delays);

// Multilayer greedy: walks delay layers from the maximum down, keeps the
// working subgraph restricted to neighbors of everything picked so far
// (global adjacency), and extends by the highest modified weight. The result
// is a maximal clique of the graph.
Clique select_clique_mdd(const IdncGraph& graph, std::span<const DelayCount> delays,
                         std::span<const double> erasure_probs);

// Same greedy loop with a single layer and reception-probability weights.
Clique select_clique_sdd(const IdncGraph& graph, std::span<const double> erasure_probs);

// Exhaustive baseline: evaluates the objective on every maximal clique and
// returns the minimizer; ties break on the lexicographically smallest sorted
// member list. Refuses graphs above the enumeration bound.
Clique select_clique_exact(const IdncGraph& graph, std::span<const DelayCount> delays,
                           std::span<const double> erasure_probs, DelayObjective objective,
                           std::size_t enumeration_bound = kDefaultCliqueEnumerationBound);

}  // namespace idnc
