#include "idnc_graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace idnc {

void IdncGraph::finalize_from_vertices() {
  std::sort(vertices_.begin(), vertices_.end());
  adjacency_.assign(vertices_.size(), VertexSet(vertices_.size()));
}

IdncGraph IdncGraph::build(const FeedbackMatrix& feedback) {
  IdncGraph g;
  g.receiver_count_ = feedback.receiver_count();
  g.packet_count_ = feedback.packet_count();
  for (ReceiverId i = 0; i < g.receiver_count_; ++i)
    for (PacketId j = 0; j < g.packet_count_; ++j)
      if (feedback.wanted(i, j)) g.vertices_.push_back({i, j});
  g.finalize_from_vertices();

  const std::size_t n = g.vertices_.size();
  std::vector<VertexSet> by_packet(g.packet_count_, VertexSet(n));
  std::vector<VertexSet> by_receiver(g.receiver_count_, VertexSet(n));
  for (VertexIndex u = 0; u < n; ++u) {
    by_packet[g.vertices_[u].packet].set(u);
    by_receiver[g.vertices_[u].receiver].set(u);
  }
  // holder_of[j]: vertices whose receiver already holds packet j.
  std::vector<VertexSet> holder_of(g.packet_count_, VertexSet(n));
  for (PacketId j = 0; j < g.packet_count_; ++j)
    for (ReceiverId k = 0; k < g.receiver_count_; ++k)
      if (!feedback.wanted(k, j)) holder_of[j] |= by_receiver[k];
  // held_packet_vertices[i]: vertices whose packet is in receiver i's Has set.
  std::vector<VertexSet> held_packet_vertices(g.receiver_count_, VertexSet(n));
  for (ReceiverId i = 0; i < g.receiver_count_; ++i)
    for (PacketId l = 0; l < g.packet_count_; ++l)
      if (!feedback.wanted(i, l)) held_packet_vertices[i] |= by_packet[l];

  for (VertexIndex u = 0; u < n; ++u) {
    const Vertex v = g.vertices_[u];
    VertexSet row = by_packet[v.packet];
    row.or_and(holder_of[v.packet], held_packet_vertices[v.receiver]);
    row.and_not(by_receiver[v.receiver]);  // same-receiver pairs are never adjacent
    g.adjacency_[u] = std::move(row);
  }
  return g;
}

IdncGraph IdncGraph::from_edges(ReceiverId receiver_count, PacketId packet_count,
                                std::vector<Vertex> vertices,
                                const std::vector<std::pair<Vertex, Vertex>>& edges) {
  IdncGraph g;
  g.receiver_count_ = receiver_count;
  g.packet_count_ = packet_count;
  g.vertices_ = std::move(vertices);
  for (const Vertex& v : g.vertices_)
    if (v.receiver >= receiver_count || v.packet >= packet_count)
      throw std::invalid_argument("vertex outside the receiver/packet range");
  g.finalize_from_vertices();
  if (std::adjacent_find(g.vertices_.begin(), g.vertices_.end()) != g.vertices_.end())
    throw std::invalid_argument("duplicate vertex");

  for (const auto& [a, b] : edges) {
    const auto ia = g.index_of(a);
    const auto ib = g.index_of(b);
    if (!ia || !ib) throw std::invalid_argument("edge endpoint is not a vertex");
    if (*ia == *ib) throw std::invalid_argument("self-loop");
    if (a.receiver == b.receiver)
      throw std::invalid_argument("edge between vertices of the same receiver");
    g.adjacency_[*ia].set(*ib);
    g.adjacency_[*ib].set(*ia);
  }
  return g;
}

std::optional<VertexIndex> IdncGraph::index_of(Vertex v) const {
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<VertexIndex>(it - vertices_.begin());
}

VertexSet IdncGraph::all_vertices() const {
  VertexSet s(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) s.set(i);
  return s;
}

std::vector<ReceiverId> IdncGraph::receivers_present() const {
  std::vector<ReceiverId> out;
  for (const Vertex& v : vertices_)
    if (out.empty() || out.back() != v.receiver) out.push_back(v.receiver);
  return out;
}

std::string IdncGraph::edge_list() const {
  std::ostringstream os;
  for (VertexIndex a = 0; a < vertices_.size(); ++a) {
    adjacency_[a].for_each([&](std::size_t b) {
      if (b <= a) return;
      const Vertex& u = vertices_[a];
      const Vertex& w = vertices_[b];
      os << u.receiver << ':' << u.packet << " -- " << w.receiver << ':' << w.packet << '\n';
    });
  }
  return os.str();
}

Clique make_clique(const IdncGraph& graph, std::span<const VertexIndex> members) {
  Clique c;
  c.indices.assign(members.begin(), members.end());
  std::sort(c.indices.begin(), c.indices.end());
  for (std::size_t a = 0; a < c.indices.size(); ++a) {
    if (c.indices[a] >= graph.vertex_count())
      throw std::invalid_argument("clique member index out of range");
    if (a > 0 && c.indices[a] == c.indices[a - 1])
      throw ContractViolation("duplicate clique member");
    for (std::size_t b = a + 1; b < c.indices.size(); ++b)
      if (!graph.adjacent(c.indices[a], c.indices[b]))
        throw ContractViolation("clique members are not pairwise adjacent");
  }
  for (VertexIndex i : c.indices) c.members.push_back(graph.vertex(i));
  for (const Vertex& v : c.members) {
    c.combo.push_back(v.packet);
    c.targeted.push_back(v.receiver);
  }
  std::sort(c.combo.begin(), c.combo.end());
  c.combo.erase(std::unique(c.combo.begin(), c.combo.end()), c.combo.end());
  std::sort(c.targeted.begin(), c.targeted.end());
  if (std::adjacent_find(c.targeted.begin(), c.targeted.end()) != c.targeted.end())
    throw ContractViolation("clique holds two vertices of one receiver");
  return c;
}

VertexSet restrict_to_neighbors(const IdncGraph& graph, const VertexSet& active,
                                VertexIndex pivot) {
  VertexSet out = active;
  out &= graph.neighbors(pivot);
  return out;
}

IdncGraph restrict_to_neighbors(const IdncGraph& graph, Vertex v) {
  const auto pivot = graph.index_of(v);
  if (!pivot) throw std::invalid_argument("pivot vertex is not in the graph");
  std::vector<Vertex> kept;
  graph.neighbors(*pivot).for_each(
      [&](std::size_t u) { kept.push_back(graph.vertex(static_cast<VertexIndex>(u))); });
  std::vector<std::pair<Vertex, Vertex>> edges;
  graph.neighbors(*pivot).for_each([&](std::size_t a) {
    graph.neighbors(*pivot).for_each([&](std::size_t b) {
      if (a < b && graph.adjacent(static_cast<VertexIndex>(a), static_cast<VertexIndex>(b)))
        edges.emplace_back(graph.vertex(static_cast<VertexIndex>(a)),
                           graph.vertex(static_cast<VertexIndex>(b)));
    });
  });
  return IdncGraph::from_edges(graph.receiver_count(), graph.packet_count(), std::move(kept),
                               edges);
}

LayerPartition partition_layers(const IdncGraph& graph, std::span<const DelayCount> delays) {
  if (delays.size() < graph.receiver_count())
    throw std::invalid_argument("delay entry missing for a receiver in the graph");
  std::map<DelayCount, VertexSet, std::greater<>> groups;
  for (VertexIndex u = 0; u < graph.vertex_count(); ++u) {
    const DelayCount d = delays[graph.vertex(u).receiver];
    groups.try_emplace(d, VertexSet(graph.vertex_count())).first->second.set(u);
  }
  LayerPartition partition;
  partition.layers.reserve(groups.size());
  for (auto& [delay, members] : groups) partition.layers.push_back({delay, std::move(members)});
  return partition;
}

namespace {

void bron_kerbosch(const IdncGraph& graph, std::vector<VertexIndex>& current,
                   VertexSet candidates, VertexSet excluded,
                   std::vector<std::vector<VertexIndex>>& out) {
  if (candidates.none() && excluded.none()) {
    out.push_back(current);
    return;
  }
  // Pivot on the vertex covering the most candidates.
  VertexIndex pivot = 0;
  std::size_t best_cover = 0;
  bool have_pivot = false;
  auto consider = [&](std::size_t u) {
    const VertexSet covered = candidates & graph.neighbors(static_cast<VertexIndex>(u));
    const std::size_t cover = covered.count();
    if (!have_pivot || cover > best_cover) {
      pivot = static_cast<VertexIndex>(u);
      best_cover = cover;
      have_pivot = true;
    }
  };
  candidates.for_each(consider);
  excluded.for_each(consider);

  VertexSet work = candidates;
  work.and_not(graph.neighbors(pivot));
  work.for_each([&](std::size_t u) {
    const auto v = static_cast<VertexIndex>(u);
    current.push_back(v);
    bron_kerbosch(graph, current, candidates & graph.neighbors(v),
                  excluded & graph.neighbors(v), out);
    current.pop_back();
    candidates.reset(u);
    excluded.set(u);
  });
}

}  // namespace

std::vector<Clique> enumerate_maximal_cliques(const IdncGraph& graph, std::size_t max_vertices) {
  if (graph.vertex_count() > max_vertices)
    throw ResourceLimitError("graph has " + std::to_string(graph.vertex_count()) +
                             " vertices, enumeration bound is " + std::to_string(max_vertices));
  std::vector<Clique> cliques;
  if (graph.empty()) return cliques;

  std::vector<std::vector<VertexIndex>> found;
  std::vector<VertexIndex> current;
  bron_kerbosch(graph, current, graph.all_vertices(), VertexSet(graph.vertex_count()), found);
  for (auto& members : found) std::sort(members.begin(), members.end());
  std::sort(found.begin(), found.end());
  cliques.reserve(found.size());
  for (const auto& members : found) cliques.push_back(make_clique(graph, members));
  return cliques;
}

}  // namespace idnc
