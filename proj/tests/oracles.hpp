#pragma once

// Test-only reference implementations.  None of these call into the search
// kernels they are used to check.

#include <cstdint>
#include <algorithm>
#include <functional>
#include <vector>

#include "ergo/graph.hpp"
#include "ergo/pattern.hpp"

namespace oracle {

using ergo::Graph;
using ergo::Pattern;
using ergo::Vertex;

// Tries every injective map V(P) -> V(G) and checks all pattern edges at the
// leaf.  No pruning, no symmetry breaking.
inline bool all_injections_contains(const Graph& g, const Pattern& p) {
  const std::size_t k = p.vertex_count();
  const std::size_t n = g.vertex_count();
  if (k > n) return false;
  const auto pe = p.graph().edges();
  std::vector<Vertex> image(k);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t d) {
    if (d == k) {
      for (auto [a, b] : pe)
        if (!g.adjacent(image[a], image[b])) return false;
      return true;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      image[d] = v;
      if (rec(d + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  return rec(0);
}

inline Graph induced(const Graph& g, std::uint64_t mask) {
  std::vector<Vertex> idx;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (mask >> v & 1u) idx.push_back(v);
  Graph h(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (g.adjacent(idx[i], idx[j])) h.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return h;
}

// alpha_F by scanning all 2^n subsets (n <= 16).
inline std::size_t subset_scan_alpha(const Graph& g, const Pattern& p) {
  std::size_t best = 0;
  const std::uint64_t n = g.vertex_count();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    const auto c = static_cast<std::size_t>(__builtin_popcountll(m));
    if (c <= best) continue;
    if (!all_injections_contains(induced(g, m), p)) best = c;
  }
  return best;
}

// Classical independence number: branch on a max-degree vertex
// (exclude it, or take it and drop its closed neighbourhood).
inline std::size_t independence_number(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint64_t> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= std::uint64_t{1} << v;
    adj[v] |= std::uint64_t{1} << u;
  }
  std::function<std::size_t(std::uint64_t)> mis = [&](std::uint64_t alive) -> std::size_t {
    if (!alive) return 0;
    int best_v = -1, best_d = -1;
    for (std::uint64_t m = alive; m; m &= m - 1) {
      const int v = __builtin_ctzll(m);
      const int d = __builtin_popcountll(adj[v] & alive);
      if (d > best_d) {
        best_d = d;
        best_v = v;
      }
    }
    if (best_d == 0) return static_cast<std::size_t>(__builtin_popcountll(alive));
    const std::uint64_t bit = std::uint64_t{1} << best_v;
    const std::size_t without = mis(alive & ~bit);
    const std::size_t with = 1 + mis(alive & ~bit & ~adj[best_v]);
    return std::max(without, with);
  };
  return mis(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

// Small graphs as adjacency masks (n <= 8).
using Masks = std::vector<std::uint8_t>;

inline bool c4_free(const Masks& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (__builtin_popcount(a[i] & a[j]) >= 2) return false;
  return true;
}

inline bool triangle_free(const Masks& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((a[i] >> j & 1u) && (a[i] & a[j])) return false;
  return true;
}

inline int mask_edges(const Masks& a) {
  int twice = 0;
  for (auto m : a) twice += __builtin_popcount(m);
  return twice / 2;
}

// ex(n, F) for a hereditary property by exhaustive extension: every F-free
// graph on k+1 labelled vertices restricts to an F-free graph on the first k,
// so extending every F-free k-vertex graph by all 2^k neighbourhoods
// enumerates them all.
inline std::vector<int> brute_force_ex(std::size_t max_n, const std::function<bool(const Masks&)>& free) {
  std::vector<int> ex(max_n + 1, 0);
  std::vector<Masks> level{Masks{}};
  for (std::size_t k = 0; k < max_n; ++k) {
    std::vector<Masks> next;
    int best = 0;
    const bool keep = k + 1 < max_n;
    for (const auto& g : level) {
      for (std::uint32_t nb = 0; nb < (1u << k); ++nb) {
        Masks h = g;
        h.push_back(static_cast<std::uint8_t>(nb));
        for (std::size_t i = 0; i < k; ++i)
          if (nb >> i & 1u) h[i] |= static_cast<std::uint8_t>(1u << k);
        if (!free(h)) continue;
        best = std::max(best, mask_edges(h));
        if (keep) next.push_back(std::move(h));
      }
    }
    ex[k + 1] = best;
    level = std::move(next);
  }
  return ex;
}

// Petersen graph as the Kneser graph K(5,2): 2-subsets of {0..4}, adjacent
// iff disjoint.
inline Graph kneser_petersen() {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) pairs.emplace_back(a, b);
  Graph g(10);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i + 1; j < 10; ++j) {
      auto [a, b] = pairs[i];
      auto [c, d] = pairs[j];
      if (a != c && a != d && b != c && b != d) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  return g;
}

}  // namespace oracle

namespace oracle {

// Exists an injective map with every pattern edge present and `accept(image)`.
inline bool all_injections_any(const Graph& g, const Pattern& p,
                               const std::function<bool(const std::vector<Vertex>&)>& accept) {
  const std::size_t k = p.vertex_count();
  const std::size_t n = g.vertex_count();
  if (k > n) return false;
  const auto pe = p.graph().edges();
  std::vector<Vertex> image(k);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t d) {
    if (d == k) {
      for (auto [a, b] : pe)
        if (!g.adjacent(image[a], image[b])) return false;
      return accept(image);
    }
    for (Vertex v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      image[d] = v;
      if (rec(d + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  return rec(0);
}

// One representative per isomorphism class of graphs on n <= 7 vertices,
// by extension plus brute-force canonical form (minimum adjacency code over
// all vertex permutations).
inline std::vector<Graph> nonisomorphic_graphs(std::size_t n) {
  auto code_of = [](const Masks& a, const std::vector<int>& perm) {
    std::uint32_t code = 0;
    int bit = 0;
    const std::size_t k = a.size();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j, ++bit)
        if (a[perm[i]] >> perm[j] & 1u) code |= 1u << bit;
    return code;
  };
  auto canonical = [&](const Masks& a) {
    std::vector<int> perm(a.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::uint32_t best = ~0u;
    do best = std::min(best, code_of(a, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  };
  std::vector<Masks> level{Masks{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::uint32_t> seen;
    std::vector<Masks> next;
    for (const auto& g : level)
      for (std::uint32_t nb = 0; nb < (1u << k); ++nb) {
        Masks h = g;
        h.push_back(static_cast<std::uint8_t>(nb));
        for (std::size_t i = 0; i < k; ++i)
          if (nb >> i & 1u) h[i] |= static_cast<std::uint8_t>(1u << k);
        const auto c = canonical(h);
        if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
        seen.push_back(c);
        next.push_back(std::move(h));
      }
    level = std::move(next);
  }
  std::vector<Graph> out;
  for (const auto& a : level) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (a[i] >> j & 1u) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    out.push_back(std::move(g));
  }
  return out;
}

// Number of |V(P)|-subsets of V(G) spanning a copy of P (n <= 20).
inline std::size_t count_copies(const Graph& g, const Pattern& p) {
  std::size_t c = 0;
  const std::size_t k = p.vertex_count();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.vertex_count()); ++m)
    if (static_cast<std::size_t>(__builtin_popcountll(m)) == k && all_injections_contains(induced(g, m), p)) ++c;
  return c;
}

}  // namespace oracle
