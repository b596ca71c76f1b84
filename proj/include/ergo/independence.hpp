#pragma once

// F-independent sets (alpha_F) and Turán-number oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "ergo/bitset.hpp"
#include "ergo/error.hpp"
#include "ergo/graph.hpp"
#include "ergo/pattern.hpp"
#include "ergo/random.hpp"
#include "ergo/subgraph_search.hpp"

namespace ergo {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

namespace detail {

// Include/exclude branch-and-bound over vertices.  Candidates are kept
// individually compatible with the current set (forward checking), so the
// bound |current| + |candidates| is tight enough for n <= ~40.
class FreeSetSearch {
 public:
  FreeSetSearch(const Graph& g, const Pattern& p, std::uint64_t budget, std::size_t target)
      : g_(g), matcher_(p), budget_(budget), target_(target), current_(g.vertex_count()), best_(g.vertex_count()) {}

  void seed_best(const VertexSet& s) {
    if (s.size() > best_.size()) best_ = s;
    done_ = best_.size() >= target_;
  }

  void run() {
    std::vector<Vertex> cands(g_.vertex_count());
    std::iota(cands.begin(), cands.end(), 0u);
    // Low degree first: those vertices are the likeliest members of a large
    // F-free set, which makes good incumbents appear early.
    std::stable_sort(cands.begin(), cands.end(),
                     [&](Vertex a, Vertex b) { return g_.degree(a) < g_.degree(b); });
    // A single vertex contains F only if F itself has one vertex.
    if (matcher_.pattern_size() <= 1) cands.clear();
    if (!done_) recurse(std::move(cands));
  }

  const VertexSet& best() const noexcept { return best_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  void recurse(std::vector<Vertex> cands) {
    if (++nodes_ > budget_) throw BudgetExceeded("F-independent set search", nodes_ - 1);
    if (current_.size() > best_.size()) {
      best_ = current_;
      if (best_.size() >= target_) {
        done_ = true;
        return;
      }
    }
    std::size_t head = 0;
    while (head < cands.size()) {
      if (current_.size() + (cands.size() - head) <= best_.size()) return;
      const Vertex c = cands[head++];
      current_.insert(c);
      std::vector<Vertex> next;
      next.reserve(cands.size() - head);
      for (std::size_t i = head; i < cands.size(); ++i) {
        const Vertex w = cands[i];
        current_.insert(w);
        const bool clash = matcher_.find_through_vertex(g_, &current_, w).has_value();
        current_.erase(w);
        if (!clash) next.push_back(w);
      }
      recurse(std::move(next));
      current_.erase(c);
      if (done_) return;
    }
    if (current_.size() > best_.size()) best_ = current_;
  }

  const Graph& g_;
  PatternMatcher matcher_;
  std::uint64_t budget_;
  std::size_t target_;
  std::uint64_t nodes_ = 0;
  bool done_ = false;
  VertexSet current_;
  VertexSet best_;
};

}  // namespace detail

// Greedy F-independent set: scan vertices in a seeded random order, keep each
// one whose addition leaves the set F-free.  A lower bound on alpha_F(G).
inline VertexSet max_pattern_free_greedy(const Graph& g, const Pattern& p, std::uint64_t seed) {
  PatternMatcher matcher(p);
  SplitMix64 rng(seed);
  const auto order = random_permutation(g.vertex_count(), rng);
  VertexSet s(g.vertex_count());
  for (Vertex v : order) {
    s.insert(v);
    if (p.vertex_count() <= 1 || matcher.find_through_vertex(g, &s, v)) s.erase(v);
  }
  return s;
}

// A maximum F-independent set (|S| = alpha_F(G)).  Throws BudgetExceeded if
// the search needs more than `node_budget` decisions.
inline VertexSet max_pattern_free_exact(const Graph& g, const Pattern& p,
                                        std::uint64_t node_budget = kDefaultNodeBudget) {
  detail::FreeSetSearch search(g, p, node_budget, std::numeric_limits<std::size_t>::max());
  search.seed_best(max_pattern_free_greedy(g, p, 0));
  search.run();
  return search.best();
}

// An F-independent set of exactly `size` vertices, or an empty optional if
// none exists.  Throws BudgetExceeded.
inline std::optional<VertexSet> find_pattern_free_set(const Graph& g, const Pattern& p, std::size_t size,
                                                      std::uint64_t node_budget = kDefaultNodeBudget) {
  if (size > g.vertex_count()) return std::nullopt;
  detail::FreeSetSearch search(g, p, node_budget, size);
  search.run();
  if (search.best().size() < size) return std::nullopt;
  // Any subset of an F-free set is F-free; trim to the requested size.
  VertexSet out(g.vertex_count());
  for (Vertex v : search.best().members()) {
    if (out.size() == size) break;
    out.insert(v);
  }
  return out;
}

// Mutable adjacency used by the edge branch-and-bound; satisfies the host
// interface of PatternMatcher.
class EdgeSetHost {
 public:
  explicit EdgeSetHost(std::size_t n) : n_(n), nw_(words_for(n)), rows_(n * nw_, 0) {}

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t word_count() const noexcept { return nw_; }
  const Word* row(Vertex v) const noexcept { return rows_.data() + v * nw_; }

  void add(Vertex u, Vertex v) noexcept {
    bits::set(rows_.data() + u * nw_, v);
    bits::set(rows_.data() + v * nw_, u);
  }
  void remove(Vertex u, Vertex v) noexcept {
    bits::reset(rows_.data() + u * nw_, v);
    bits::reset(rows_.data() + v * nw_, u);
  }

 private:
  std::size_t n_, nw_;
  std::vector<Word> rows_;
};

struct EdgeSearchResult {
  std::size_t edges = 0;        // best edge count found
  std::vector<Edge> subgraph;   // its edges
  bool complete = false;        // search finished (edges is the maximum)
  std::uint64_t nodes = 0;
};

// Maximum F-free spanning subgraph of `host`, by include/exclude branching
// over host edges with forward checking.  Never throws on budget: an
// incomplete search reports its best subgraph with complete == false.
inline EdgeSearchResult max_pattern_free_subgraph(const Graph& host, const Pattern& p,
                                                  std::uint64_t node_budget = kDefaultNodeBudget) {
  EdgeSearchResult res;
  const auto all = host.edges();
  if (p.edge_count() == 0) {
    // Every graph on >= |V(F)| vertices contains an edgeless F.
    if (host.vertex_count() < p.vertex_count()) {
      res.edges = all.size();
      res.subgraph = all;
    }
    res.complete = true;
    return res;
  }
  if (p.edge_count() == 1) {
    // F is an edge plus isolated vertices: the empty subgraph is the only
    // F-free choice once there is room for F at all.
    if (host.vertex_count() < p.vertex_count()) {
      res.edges = all.size();
      res.subgraph = all;
    }
    res.complete = true;
    return res;
  }

  PatternMatcher matcher(p);
  EdgeSetHost cur(host.vertex_count());
  std::vector<Edge> chosen;
  bool over = false;

  auto recurse = [&](auto&& self, std::vector<Edge> cands) -> void {
    if (over) return;
    if (++res.nodes > node_budget) {
      over = true;
      return;
    }
    if (chosen.size() > res.edges) {
      res.edges = chosen.size();
      res.subgraph = chosen;
    }
    std::size_t head = 0;
    while (head < cands.size()) {
      if (chosen.size() + (cands.size() - head) <= res.edges) return;
      const Edge e = cands[head++];
      cur.add(e.first, e.second);
      chosen.push_back(e);
      std::vector<Edge> next;
      next.reserve(cands.size() - head);
      for (std::size_t i = head; i < cands.size(); ++i) {
        const auto [a, b] = cands[i];
        cur.add(a, b);
        if (!matcher.has_copy_through_edge(cur, nullptr, a, b)) next.push_back(cands[i]);
        cur.remove(a, b);
      }
      self(self, std::move(next));
      chosen.pop_back();
      cur.remove(e.first, e.second);
      if (over) return;
    }
  };
  recurse(recurse, all);
  res.complete = !over;
  return res;
}

enum class TuranMode { exact, bound };

struct TuranBound {
  std::uint64_t value = 0;
  TuranMode mode = TuranMode::bound;
  std::string source;
};

namespace detail {

inline std::uint64_t choose2(std::uint64_t b) { return b * (b ? b - 1 : 0) / 2; }

// Rounds a real-valued upper bound down to an integer that is still an upper
// bound (absorbing floating-point noise upwards).
inline std::uint64_t floor_bound(double x) {
  if (x <= 0) return 0;
  return static_cast<std::uint64_t>(std::floor(x * (1 + 1e-12) + 1e-9));
}

// Turán graph T(b, parts): exact ex(b, K_{parts+1}).
inline std::uint64_t turan_graph_edges(std::uint64_t b, std::uint64_t parts) {
  std::uint64_t within = 0;
  for (std::uint64_t i = 0; i < parts; ++i) within += choose2(b / parts + (i < b % parts ? 1 : 0));
  return choose2(b) - within;
}

// Kővári–Sós–Turán: ex(b, K_{s,t}) <= (t-1)^{1/s} b^{2-1/s} / 2 + (s-1) b / 2, s <= t.
inline std::uint64_t kst_bound(std::uint64_t b, std::uint64_t s, std::uint64_t t) {
  if (s > t) std::swap(s, t);
  const double bd = static_cast<double>(b);
  const double sd = static_cast<double>(s);
  return floor_bound(0.5 * std::pow(static_cast<double>(t - 1), 1.0 / sd) * std::pow(bd, 2.0 - 1.0 / sd) +
                     0.5 * (sd - 1.0) * bd);
}

// Smallest KST bound over all part-flips of a 2-coloured pattern.
inline std::uint64_t bipartite_pattern_bound(std::uint64_t b, const Pattern& p, const std::vector<int>& colour) {
  // Components and their colour-class sizes.
  const std::size_t k = p.vertex_count();
  std::vector<int> comp(k, -1);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sizes;
  for (Vertex s = 0; s < k; ++s) {
    if (comp[s] != -1) continue;
    const int id = static_cast<int>(sizes.size());
    sizes.emplace_back(0, 0);
    std::vector<Vertex> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      (colour[u] == 0 ? sizes[id].first : sizes[id].second) += 1;
      p.graph().neighbors(u).for_each([&](Vertex w) {
        if (comp[w] == -1) {
          comp[w] = id;
          stack.push_back(w);
        }
      });
    }
  }
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  const std::size_t c = sizes.size();
  for (std::uint64_t flips = 0; flips < (std::uint64_t{1} << (c - 1)); ++flips) {
    std::uint64_t s = 0, t = 0;
    for (std::size_t i = 0; i < c; ++i) {
      const bool f = i > 0 && (flips >> (i - 1) & 1u);
      s += f ? sizes[i].second : sizes[i].first;
      t += f ? sizes[i].first : sizes[i].second;
    }
    if (s == 0 || t == 0) continue;  // F has no edges across: not a useful K_{s,t}
    best = std::min(best, kst_bound(b, s, t));
  }
  return best;
}

}  // namespace detail

// An admissible upper bound on ex(b, F).
//
// Exact mode (b <= 8, |V(F)| <= 16): the true value by edge branch-and-bound
// on K_b.  Bound mode: the minimum of every closed form below that applies,
// each nondecreasing in b, and never more than C(b, 2):
//   clique K_t           Turán graph T(b, t-1)                (Turán 1941, exact)
//   C4                   floor(b/4 (1 + sqrt(4b-3)))          (Reiman 1958)
//   C_{2k}, k >= 3       (k-1) b^{1+1/k} + 16(k-1) b          (Pikhurko 2012)
//                        and KST for K_{k,k} ⊇ C_{2k}
//   C_{2k+1}             floor(max(b, 4k-2)^2 / 4)            (Füredi–Gunderson 2015, n >= 4k-2,
//                                                              extended downwards by monotonicity of ex)
//   bipartite F          KST for K_{s,t} ⊇ F                  (Kővári–Sós–Turán 1954)
// Containers only need e(G[S]) <= bound, so any of these may stand in for ex.
inline TuranBound turan_upper(std::uint64_t b, const Pattern& p, TuranMode mode = TuranMode::bound,
                              std::uint64_t node_budget = kDefaultNodeBudget) {
  if (b < 1) throw InvalidArgument("turan_upper needs b >= 1");
  const std::uint64_t k = p.vertex_count();
  if (mode == TuranMode::exact) {
    if (k > Pattern::kMaxExplicitVertices) throw InvalidArgument("exact mode supports patterns with <= 16 vertices");
    if (b > 8) throw InvalidArgument("exact mode supports b <= 8");
    const auto res = max_pattern_free_subgraph(complete_graph(static_cast<std::size_t>(b)), p, node_budget);
    if (!res.complete) throw BudgetExceeded("exact Turán search", res.nodes);
    return {res.edges, TuranMode::exact, "edge branch-and-bound on K_b"};
  }

  std::uint64_t best = detail::choose2(b);
  std::string source = "trivial C(b,2)";
  auto offer = [&](std::uint64_t v, const char* src) {
    if (v < best) {
      best = v;
      source = src;
    }
  };
  if (b < k) return {best, TuranMode::bound, "b < |V(F)|: C(b,2)"};

  const auto& parts = p.parts();
  const bool all_ones = !parts.empty() && std::all_of(parts.begin(), parts.end(), [](auto s) { return s == 1; });
  if (p.kind() == Pattern::Kind::clique || (p.kind() == Pattern::Kind::complete_multipartite && all_ones)) {
    offer(detail::turan_graph_edges(b, k - 1), "Turán graph T(b,t-1)");
  } else if (p.kind() == Pattern::Kind::cycle) {
    if (k % 2 == 0) {
      const std::uint64_t half = k / 2;
      if (half == 2) {
        const double bd = static_cast<double>(b);
        offer(detail::floor_bound(bd / 4.0 * (1.0 + std::sqrt(4.0 * bd - 3.0))), "Reiman");
      } else {
        const double bd = static_cast<double>(b);
        const double kk = static_cast<double>(half);
        offer(detail::floor_bound((kk - 1) * std::pow(bd, 1.0 + 1.0 / kk) + 16.0 * (kk - 1) * bd), "Pikhurko");
        offer(detail::kst_bound(b, half, half), "Kővári–Sós–Turán K_{k,k}");
      }
    } else {
      const std::uint64_t half = (k - 1) / 2;
      const std::uint64_t from = std::max<std::uint64_t>(b, 4 * half - 2);
      offer(from * from / 4, "Füredi–Gunderson");
    }
  } else {
    const auto colour = p.two_colouring();
    if (!colour.empty() && p.edge_count() > 0) offer(detail::bipartite_pattern_bound(b, p, colour), "Kővári–Sós–Turán");
  }
  return {best, TuranMode::bound, source};
}

}  // namespace ergo
