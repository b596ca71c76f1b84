#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ergo/bitset.hpp"
#include "ergo/error.hpp"

namespace ergo {

using Edge = std::pair<Vertex, Vertex>;

// Undirected simple graph on [0, n) with one adjacency bitset per vertex.
// Graphs are built with add_edge and treated as immutable afterwards.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n, std::string label = {}) : label_(std::move(label)), rows_(n, VertexSet(n)) {}

  template <typename Edges>
  static Graph from_edges(std::size_t n, const Edges& edges, std::string label = {}) {
    Graph g(n, std::move(label));
    for (const auto& [u, v] : edges) g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    return g;
  }

  std::size_t vertex_count() const noexcept { return rows_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }

  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  // Adds {u, v}; adding an existing edge is a no-op.
  void add_edge(Vertex u, Vertex v) {
    if (u >= vertex_count() || v >= vertex_count())
      throw InvalidArgument("edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range for n = " +
                            std::to_string(vertex_count()));
    if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    if (rows_[u].contains(v)) return;
    rows_[u].insert(v);
    rows_[v].insert(u);
    ++edges_;
  }

  bool adjacent(Vertex u, Vertex v) const noexcept { return u < vertex_count() && rows_[u].contains(v); }

  const VertexSet& neighbors(Vertex v) const { return rows_.at(v); }
  std::size_t degree(Vertex v) const { return rows_.at(v).size(); }

  // Row access for the search kernels.
  const Word* row(Vertex v) const noexcept { return rows_[v].data(); }
  std::size_t word_count() const noexcept { return words_for(vertex_count()); }

  std::size_t max_degree() const noexcept {
    std::size_t d = 0;
    for (const auto& r : rows_) d = std::max(d, r.size());
    return d;
  }

  bool is_regular() const noexcept {
    for (const auto& r : rows_)
      if (r.size() != rows_.front().size()) return false;
    return true;
  }

  // Edges {u, v} with u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (Vertex u = 0; u < vertex_count(); ++u)
      rows_[u].for_each([&](Vertex v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  // Label is metadata and does not take part in equality.
  bool operator==(const Graph& o) const noexcept { return rows_ == o.rows_; }

 private:
  std::string label_;
  std::vector<VertexSet> rows_;
  std::size_t edges_ = 0;
};

// e(G[S]).
inline std::size_t edges_within(const Graph& g, const VertexSet& s) {
  std::size_t twice = 0;
  s.for_each([&](Vertex v) { twice += g.neighbors(v).intersection_size(s); });
  return twice / 2;
}

// d_S(v) = |N(v) ∩ S|.
inline std::size_t degree_into(const Graph& g, Vertex v, const VertexSet& s) {
  return g.neighbors(v).intersection_size(s);
}

// G[S], re-indexed by ascending original index.
inline Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.vertex_count())
    throw InvalidArgument("vertex set universe " + std::to_string(s.universe()) + " does not match n = " +
                          std::to_string(g.vertex_count()));
  const auto members = s.members();
  std::vector<Vertex> index(g.vertex_count(), 0);
  for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<Vertex>(i);
  Graph h(members.size(), g.label().empty() ? std::string{} : g.label() + "[S]");
  for (Vertex u : members)
    g.neighbors(u).for_each([&](Vertex v) {
      if (u < v && s.contains(v)) h.add_edge(index[u], index[v]);
    });
  return h;
}

// Overload taking explicit members; any member >= n is an error.
inline Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& members) {
  VertexSet s(g.vertex_count());
  for (Vertex v : members) {
    if (v >= g.vertex_count())
      throw InvalidArgument("member " + std::to_string(v) + " >= n = " + std::to_string(g.vertex_count()));
    s.insert(v);
  }
  return induced_subgraph(g, s);
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n, "K" + std::to_string(n));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
  Graph g(n, "C" + std::to_string(n));
  for (Vertex v = 0; v < n; ++v) g.add_edge(v, static_cast<Vertex>((v + 1) % n));
  return g;
}

inline Graph empty_graph(std::size_t n) { return Graph(n, "empty" + std::to_string(n)); }

// Complete multipartite graph with consecutive parts of the given sizes.
inline Graph complete_multipartite_graph(const std::vector<std::size_t>& parts) {
  std::size_t n = 0;
  std::vector<std::size_t> part_of;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    n += parts[i];
    part_of.insert(part_of.end(), parts[i], i);
  }
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (part_of[u] != part_of[v]) g.add_edge(u, v);
  return g;
}

}  // namespace ergo
