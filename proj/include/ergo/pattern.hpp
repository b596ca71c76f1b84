#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/error.hpp"
#include "ergo/graph.hpp"

namespace ergo {

// The forbidden graph F.
class Pattern {
 public:
  enum class Kind { clique, cycle, complete_multipartite, explicit_graph };

  // Matcher masks are 32-bit; explicit graphs are further capped at 16.
  static constexpr std::size_t kMaxVertices = 32;
  static constexpr std::size_t kMaxExplicitVertices = 16;

  static Pattern clique(std::size_t t) {
    if (t < 2) throw InvalidArgument("clique pattern needs t >= 2");
    check_size(t);
    Pattern p(Kind::clique, complete_graph(t));
    p.parts_.assign(t, 1);
    return p;
  }

  static Pattern cycle(std::size_t k) {
    if (k < 3) throw InvalidArgument("cycle pattern needs k >= 3");
    check_size(k);
    return Pattern(Kind::cycle, cycle_graph(k));
  }

  static Pattern complete_multipartite(std::vector<std::size_t> parts) {
    if (parts.size() < 2) throw InvalidArgument("complete multipartite pattern needs r >= 2 parts");
    for (auto s : parts)
      if (s < 1) throw InvalidArgument("complete multipartite part sizes must be >= 1");
    check_size(std::accumulate(parts.begin(), parts.end(), std::size_t{0}));
    Pattern p(Kind::complete_multipartite, complete_multipartite_graph(parts));
    p.parts_ = std::move(parts);
    return p;
  }

  static Pattern explicit_graph(Graph g) {
    if (g.vertex_count() == 0) throw InvalidArgument("explicit pattern must have at least one vertex");
    if (g.vertex_count() > kMaxExplicitVertices)
      throw InvalidArgument("explicit pattern has " + std::to_string(g.vertex_count()) + " vertices (max 16)");
    return Pattern(Kind::explicit_graph, std::move(g));
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }
  const Graph& graph() const noexcept { return graph_; }

  // Part sizes for cliques (all ones) and complete multipartite patterns.
  const std::vector<std::size_t>& parts() const noexcept { return parts_; }

  std::string name() const {
    switch (kind_) {
      case Kind::clique: return "K" + std::to_string(vertex_count());
      case Kind::cycle: return "C" + std::to_string(vertex_count());
      case Kind::complete_multipartite: {
        std::string s = "K";
        for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
        return s;
      }
      case Kind::explicit_graph: return "explicit" + std::to_string(vertex_count());
    }
    return {};
  }

  std::uint32_t mask(Vertex v) const {
    std::uint32_t m = 0;
    graph_.neighbors(v).for_each([&](Vertex u) { m |= std::uint32_t{1} << u; });
    return m;
  }

  // Proper 2-colouring if one exists (colour per vertex), else empty.
  std::vector<int> two_colouring() const {
    const std::size_t k = vertex_count();
    std::vector<int> colour(k, -1);
    for (Vertex s = 0; s < k; ++s) {
      if (colour[s] != -1) continue;
      colour[s] = 0;
      std::vector<Vertex> stack{s};
      while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        bool ok = true;
        graph_.neighbors(u).for_each([&](Vertex w) {
          if (colour[w] == -1) {
            colour[w] = 1 - colour[u];
            stack.push_back(w);
          } else if (colour[w] == colour[u]) {
            ok = false;
          }
        });
        if (!ok) return {};
      }
    }
    return colour;
  }

  bool is_bipartite() const { return !two_colouring().empty(); }

  // Twin classes: a ~ b iff N(a) \ {b} == N(b) \ {a}.  Twins are exchanged by
  // an automorphism, which the matcher uses for anchoring and symmetry breaking.
  std::vector<std::vector<Vertex>> twin_classes() const {
    const std::size_t k = vertex_count();
    std::vector<std::vector<Vertex>> classes;
    for (Vertex v = 0; v < k; ++v) {
      bool placed = false;
      for (auto& cls : classes) {
        bool all = true;
        for (Vertex w : cls) all = all && twins(v, w);
        if (all) {
          cls.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({v});
    }
    return classes;
  }

  bool twins(Vertex a, Vertex b) const {
    const std::uint32_t ma = mask(a) & ~(std::uint32_t{1} << b);
    const std::uint32_t mb = mask(b) & ~(std::uint32_t{1} << a);
    return ma == mb;
  }

 private:
  Pattern(Kind kind, Graph g) : kind_(kind), graph_(std::move(g)) {}

  static void check_size(std::size_t s) {
    if (s > kMaxVertices) throw InvalidArgument("pattern has more than 32 vertices");
  }

  Kind kind_;
  Graph graph_;
  std::vector<std::size_t> parts_;
};

// "K3" clique, "C4" cycle, "K2,2" / "K1,1,1" complete multipartite,
// "edge" = K2.  Explicit patterns are loaded from graph files by the caller.
inline Pattern parse_pattern(std::string_view text) {
  auto parse_num = [&](std::string_view s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
      throw InvalidArgument("bad pattern \"" + std::string(text) + "\"");
    return v;
  };
  if (text == "edge") return Pattern::clique(2);
  if (text.size() < 2) throw InvalidArgument("bad pattern \"" + std::string(text) + "\"");
  const char head = text[0];
  std::string_view rest = text.substr(1);
  if (head == 'C' || head == 'c') return Pattern::cycle(parse_num(rest));
  if (head == 'K' || head == 'k') {
    if (rest.find(',') == std::string_view::npos) return Pattern::clique(parse_num(rest));
    std::vector<std::size_t> parts;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = rest.find(',', start);
      parts.push_back(parse_num(rest.substr(start, comma == std::string_view::npos ? rest.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return Pattern::complete_multipartite(std::move(parts));
  }
  throw InvalidArgument("bad pattern \"" + std::string(text) + "\"");
}

}  // namespace ergo
