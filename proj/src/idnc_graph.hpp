#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "core_state.hpp"

namespace idnc {

// One (receiver, wanted packet) pair. Vertex order everywhere is
// lexicographic on (receiver, packet); it is the deterministic tie-breaker.
struct Vertex {
  ReceiverId receiver = 0;
  PacketId packet = 0;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

using VertexIndex = std::uint32_t;
using VertexSet = Bitset;

inline constexpr std::size_t kDefaultCliqueEnumerationBound = 25;

// Side-information graph over (receiver, wanted packet) vertices. Two
// vertices are adjacent exactly when XORing their packets is instantly
// decodable for both receivers: same packet, or each receiver already holds
// the other's packet. Immutable after construction.
class IdncGraph {
 public:
  static IdncGraph build(const FeedbackMatrix& feedback);

  // Explicit vertex/edge construction for fixtures and synthetic cases.
  // Rejects self-loops and edges between vertices of the same receiver.
  static IdncGraph from_edges(ReceiverId receiver_count, PacketId packet_count,
                              std::vector<Vertex> vertices,
                              const std::vector<std::pair<Vertex, Vertex>>& edges);

  std::size_t vertex_count() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  ReceiverId receiver_count() const { return receiver_count_; }
  PacketId packet_count() const { return packet_count_; }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(VertexIndex index) const { return vertices_[index]; }
  std::optional<VertexIndex> index_of(Vertex v) const;

  bool adjacent(VertexIndex a, VertexIndex b) const { return adjacency_[a].test(b); }
  const VertexSet& neighbors(VertexIndex index) const { return adjacency_[index]; }
  VertexSet all_vertices() const;

  // Receivers with at least one vertex, ascending (the wanting set).
  std::vector<ReceiverId> receivers_present() const;

  // Debug export, one edge per line: "i:j -- k:l".
  std::string edge_list() const;

 private:
  void finalize_from_vertices();  // sorts vertices, allocates empty adjacency

  ReceiverId receiver_count_ = 0;
  PacketId packet_count_ = 0;
  std::vector<Vertex> vertices_;      // sorted (receiver, packet)
  std::vector<VertexSet> adjacency_;  // symmetric, irreflexive
};

// A pairwise-adjacent vertex set, at most one vertex per receiver. `combo` is
// the XOR packet set it induces and `targeted` the receivers it serves.
struct Clique {
  std::vector<Vertex> members;       // sorted
  std::vector<VertexIndex> indices;  // sorted, into the originating graph
  std::vector<PacketId> combo;       // distinct, sorted
  std::vector<ReceiverId> targeted;  // distinct, sorted
  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

// Shared validation: pairwise adjacency and one vertex per receiver, else
// ContractViolation. Accepts an empty member list (empty clique).
Clique make_clique(const IdncGraph& graph, std::span<const VertexIndex> members);

// Vertices of `active` adjacent to `pivot`, consulting the graph's global
// adjacency; `pivot` itself need not be in `active`.
VertexSet restrict_to_neighbors(const IdncGraph& graph, const VertexSet& active,
                                VertexIndex pivot);

// Materialized induced subgraph on the neighbors of `v` (edges inherited).
IdncGraph restrict_to_neighbors(const IdncGraph& graph, Vertex v);

struct Layer {
  DelayCount delay = 0;
  VertexSet members;
};

// Vertices grouped by their receiver's cumulative delay, strictly decreasing;
// the first layer holds the current maximum.
struct LayerPartition {
  std::vector<Layer> layers;
  std::size_t layer_count() const { return layers.size(); }
};

LayerPartition partition_layers(const IdncGraph& graph, std::span<const DelayCount> delays);

// All inclusion-maximal cliques, ordered lexicographically by sorted member
// indices. Exhaustive; refuses graphs above `max_vertices`.
std::vector<Clique> enumerate_maximal_cliques(
    const IdncGraph& graph, std::size_t max_vertices = kDefaultCliqueEnumerationBound);

}  // namespace idnc
