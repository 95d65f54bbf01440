#include "policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace idnc {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("erasure probability outside [0, 1]");
}

void check_probs_cover(std::span<const double> erasure_probs, ReceiverId receiver_count) {
  if (erasure_probs.size() < receiver_count)
    throw std::invalid_argument("erasure probability missing for a receiver");
  for (double p : erasure_probs) check_probability(p);
}

bool contains(std::span<const ReceiverId> sorted, ReceiverId id) {
  return std::binary_search(sorted.begin(), sorted.end(), id);
}

// The shared greedy loop: per layer, restrict to neighbors of everything
// picked so far, then repeatedly take the argmax of the modified weight
// (ties to the lowest vertex index) and restrict again.
Clique greedy_select(const IdncGraph& graph, const std::vector<Layer>& layers,
                     std::span<const double> base) {
  std::vector<VertexIndex> picked;
  for (const Layer& layer : layers) {
    VertexSet working = layer.members;
    for (VertexIndex v : picked) working &= graph.neighbors(v);
    while (working.any()) {
      const std::vector<double> combined = modified_weights(graph, working, base);
      VertexIndex best = 0;
      double best_weight = 0.0;
      bool have = false;
      working.for_each([&](std::size_t u) {
        if (!have || combined[u] > best_weight) {
          best = static_cast<VertexIndex>(u);
          best_weight = combined[u];
          have = true;
        }
      });
      picked.push_back(best);
      working &= graph.neighbors(best);
    }
  }
  return make_clique(graph, picked);
}

}  // namespace

double mdd_vertex_weight(double erasure_prob) {
  check_probability(erasure_prob);
  return -std::log(std::max(erasure_prob, kMinErasureForWeights));
}

double sdd_vertex_weight(double erasure_prob) {
  check_probability(erasure_prob);
  return 1.0 - erasure_prob;
}

std::vector<double> mdd_base_weights(const IdncGraph& graph,
                                     std::span<const double> erasure_probs) {
  check_probs_cover(erasure_probs, graph.receiver_count());
  std::vector<double> base(graph.vertex_count());
  for (VertexIndex u = 0; u < graph.vertex_count(); ++u)
    base[u] = mdd_vertex_weight(erasure_probs[graph.vertex(u).receiver]);
  return base;
}

std::vector<double> sdd_base_weights(const IdncGraph& graph,
                                     std::span<const double> erasure_probs) {
  check_probs_cover(erasure_probs, graph.receiver_count());
  std::vector<double> base(graph.vertex_count());
  for (VertexIndex u = 0; u < graph.vertex_count(); ++u)
    base[u] = sdd_vertex_weight(erasure_probs[graph.vertex(u).receiver]);
  return base;
}

std::vector<double> modified_weights(const IdncGraph& graph, const VertexSet& active,
                                     std::span<const double> base) {
  if (base.size() != graph.vertex_count())
    throw std::invalid_argument("base weights must cover every vertex");
  std::vector<double> out(graph.vertex_count(), 0.0);
  active.for_each([&](std::size_t u) {
    double neighbor_sum = 0.0;
    for_each_intersection(active, graph.neighbors(static_cast<VertexIndex>(u)),
                          [&](std::size_t x) { neighbor_sum += base[x]; });
    out[u] = (base[u] + 1.0) * neighbor_sum;
  });
  return out;
}

double max_delay_increase_probability(const Clique& clique,
                                      std::span<const ReceiverId> max_delay_receivers,
                                      std::span<const ReceiverId> wanting,
                                      std::span<const double> erasure_probs) {
  double product = 1.0;  // empty product: every max-delay wanting receiver is served
  for (ReceiverId i : max_delay_receivers) {
    if (!contains(wanting, i)) continue;
    if (contains(clique.targeted, i)) continue;
    if (i >= erasure_probs.size())
      throw std::invalid_argument("erasure probability missing for a receiver");
    check_probability(erasure_probs[i]);
    product *= erasure_probs[i];
  }
  return 1.0 - product;
}

double expected_sum_delay_increase(const Clique& clique, std::span<const ReceiverId> wanting,
                                   std::span<const double> erasure_probs) {
  double total = 0.0;
  for (ReceiverId i : wanting) {
    if (contains(clique.targeted, i)) continue;
    if (i >= erasure_probs.size())
      throw std::invalid_argument("erasure probability missing for a receiver");
    check_probability(erasure_probs[i]);
    total += 1.0 - erasure_probs[i];
  }
  return total;
}

std::vector<ReceiverId> max_delay_receivers(std::span<const DelayCount> delays) {
  std::vector<ReceiverId> out;
  if (delays.empty()) return out;
  const DelayCount top = *std::max_element(delays.begin(), delays.end());
  for (std::size_t i = 0; i < delays.size(); ++i)
    if (delays[i] == top) out.push_back(static_cast<ReceiverId>(i));
  return out;
}

Clique select_clique_mdd(const IdncGraph& graph, std::span<const DelayCount> delays,
                         std::span<const double> erasure_probs) {
  if (graph.empty()) return {};
  const LayerPartition partition = partition_layers(graph, delays);
  return greedy_select(graph, partition.layers, mdd_base_weights(graph, erasure_probs));
}

Clique select_clique_sdd(const IdncGraph& graph, std::span<const double> erasure_probs) {
  if (graph.empty()) return {};
  std::vector<Layer> single_layer;
  single_layer.push_back({0, graph.all_vertices()});
  return greedy_select(graph, single_layer, sdd_base_weights(graph, erasure_probs));
}

Clique select_clique_exact(const IdncGraph& graph, std::span<const DelayCount> delays,
                           std::span<const double> erasure_probs, DelayObjective objective,
                           std::size_t enumeration_bound) {
  if (graph.empty()) return {};
  check_probs_cover(erasure_probs, graph.receiver_count());
  if (objective == DelayObjective::kMaxDelay && delays.size() < graph.receiver_count())
    throw std::invalid_argument("delay entry missing for a receiver");

  const std::vector<Clique> cliques = enumerate_maximal_cliques(graph, enumeration_bound);
  const std::vector<ReceiverId> wanting = graph.receivers_present();
  const std::vector<ReceiverId> top_delay =
      objective == DelayObjective::kMaxDelay ? max_delay_receivers(delays)
                                             : std::vector<ReceiverId>{};

  const Clique* best = nullptr;
  double best_value = 0.0;
  for (const Clique& clique : cliques) {
    const double value =
        objective == DelayObjective::kMaxDelay
            ? max_delay_increase_probability(clique, top_delay, wanting, erasure_probs)
            : expected_sum_delay_increase(clique, wanting, erasure_probs);
    // Strict < keeps the lexicographically smallest member list on ties:
    // enumeration order is lexicographic already.
    if (best == nullptr || value < best_value) {
      best = &clique;
      best_value = value;
    }
  }
  return *best;
}

}  // namespace idnc
