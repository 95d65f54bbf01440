#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

#include "idnc_graph.hpp"

namespace idnc::test {

// Exhaustive maximal-clique listing by subset enumeration. Independent of the
// pivoting enumerator it cross-checks; only usable for small graphs.
inline std::vector<std::vector<VertexIndex>> bruteforce_maximal_cliques(const IdncGraph& g) {
  const std::size_t n = g.vertex_count();
  assert(n <= 20);
  std::vector<std::uint32_t> adj(n, 0);
  for (VertexIndex a = 0; a < n; ++a)
    for (VertexIndex b = 0; b < n; ++b)
      if (a != b && g.adjacent(a, b)) adj[a] |= 1u << b;

  std::vector<std::vector<VertexIndex>> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool clique = true;
    for (VertexIndex u = 0; u < n && clique; ++u)
      if ((mask >> u) & 1u)
        if ((mask & ~(adj[u] | (1u << u))) != 0) clique = false;
    if (!clique) continue;
    bool maximal = true;
    for (VertexIndex w = 0; w < n && maximal; ++w)
      if (!((mask >> w) & 1u) && (mask & adj[w]) == mask) maximal = false;
    if (!maximal) continue;
    std::vector<VertexIndex> members;
    for (VertexIndex u = 0; u < n; ++u)
      if ((mask >> u) & 1u) members.push_back(u);
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline FeedbackMatrix random_feedback(std::mt19937_64& rng, ReceiverId receivers,
                                      PacketId packets, double want_prob = 0.5,
                                      bool ensure_vertex = true) {
  FeedbackMatrix m(receivers, packets);
  std::bernoulli_distribution wants(want_prob);
  bool any = false;
  for (ReceiverId i = 0; i < receivers; ++i)
    for (PacketId j = 0; j < packets; ++j)
      if (wants(rng)) {
        m.set_wanted(i, j, true);
        any = true;
      }
  if (ensure_vertex && !any) {
    std::uniform_int_distribution<ReceiverId> ri(0, receivers - 1);
    std::uniform_int_distribution<PacketId> pj(0, packets - 1);
    m.set_wanted(ri(rng), pj(rng), true);
  }
  return m;
}

// No vertex outside the members is adjacent to all of them.
inline bool is_maximal_clique(const IdncGraph& g, const std::vector<VertexIndex>& members) {
  for (VertexIndex w = 0; w < g.vertex_count(); ++w) {
    if (std::find(members.begin(), members.end(), w) != members.end()) continue;
    bool extends = true;
    for (VertexIndex m : members)
      if (!g.adjacent(w, m)) {
        extends = false;
        break;
      }
    if (extends) return false;
  }
  return true;
}

}  // namespace idnc::test
