#pragma once

// Backtracking subgraph search for small patterns over bitset hosts.
//
// A host is anything exposing
//   std::size_t vertex_count() const;
//   std::size_t word_count() const;
//   const Word* row(Vertex) const;
// which covers Graph as well as the mutable adjacency used by the edge
// branch-and-bound.  Containment is as a (not necessarily induced) subgraph.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "ergo/bitset.hpp"
#include "ergo/error.hpp"
#include "ergo/graph.hpp"
#include "ergo/pattern.hpp"

namespace ergo {

class PatternMatcher {
 public:
  explicit PatternMatcher(const Pattern& pattern) : k_(pattern.vertex_count()), kind_(pattern.kind()) {
    masks_.resize(k_);
    for (Vertex v = 0; v < k_; ++v) masks_[v] = pattern.mask(v);
    classes_ = pattern.twin_classes();
    class_of_.assign(k_, 0);
    for (std::size_t c = 0; c < classes_.size(); ++c)
      for (Vertex v : classes_[c]) class_of_[v] = c;

    free_plan_ = make_plan({}, true);

    // One anchor per twin class (cycles are vertex-transitive).
    if (kind_ == Pattern::Kind::cycle || kind_ == Pattern::Kind::clique) {
      vertex_plans_.push_back(make_plan({0}, false));
    } else {
      for (const auto& cls : classes_) vertex_plans_.push_back(make_plan({cls.front()}, false));
    }

    // Edge anchors: one orientation for edge-transitive patterns with a
    // reflection (cliques, cycles); otherwise one representative edge per
    // pair of twin classes, in both orientations.
    if (pattern.edge_count() > 0) {
      if (kind_ == Pattern::Kind::cycle || kind_ == Pattern::Kind::clique) {
        edge_plans_.push_back(make_plan({0, 1}, false));
      } else {
        for (std::size_t a = 0; a < classes_.size(); ++a) {
          for (std::size_t b = a; b < classes_.size(); ++b) {
            const Vertex x = classes_[a].front();
            if (a == b) {
              if (classes_[a].size() < 2) continue;
              const Vertex y = classes_[a][1];
              if (masks_[x] >> y & 1u) edge_plans_.push_back(make_plan({x, y}, false));
              continue;
            }
            const Vertex y = classes_[b].front();
            if (!(masks_[x] >> y & 1u)) continue;
            edge_plans_.push_back(make_plan({x, y}, false));
            edge_plans_.push_back(make_plan({y, x}, false));
          }
        }
      }
    }
  }

  std::size_t pattern_size() const noexcept { return k_; }

  // Any copy inside `allowed` (nullptr = whole host).  Returns the image set.
  template <typename Host>
  std::optional<VertexSet> find(const Host& g, const VertexSet* allowed = nullptr) const {
    std::optional<VertexSet> witness;
    run(g, free_plan_, allowed, {}, [&](std::span<const Vertex> image) {
      witness = image_set(g, image);
      return true;
    });
    return witness;
  }

  // A copy inside `allowed` that uses vertex v (v must be in `allowed`).
  template <typename Host>
  std::optional<VertexSet> find_through_vertex(const Host& g, const VertexSet* allowed, Vertex v) const {
    std::optional<VertexSet> witness;
    for (const auto& plan : vertex_plans_) {
      const Vertex fixed[1] = {v};
      run(g, plan, allowed, fixed, [&](std::span<const Vertex> image) {
        witness = image_set(g, image);
        return true;
      });
      if (witness) break;
    }
    return witness;
  }

  // A copy inside `allowed` that uses the host edge {u, v}.
  template <typename Host>
  bool has_copy_through_edge(const Host& g, const VertexSet* allowed, Vertex u, Vertex v) const {
    bool found = false;
    for (const auto& plan : edge_plans_) {
      const Vertex fixed[2] = {u, v};
      run(g, plan, allowed, fixed, [&](std::span<const Vertex>) {
        found = true;
        return true;
      });
      if (found) break;
    }
    return found;
  }

  // Visits labelled embeddings with twin-symmetry breaking; visit(image)
  // returns true to stop.  The same vertex set can be reached more than once
  // through automorphisms that are not twin swaps.
  template <typename Host, typename Visit>
  void for_each_embedding(const Host& g, const VertexSet* allowed, Visit&& visit) const {
    run(g, free_plan_, allowed, {}, [&](std::span<const Vertex> image) { return visit(image); });
  }

  // All copies as sorted vertex sets, deduplicated, in lexicographic order.
  // Throws BudgetExceeded after `budget` embeddings.
  template <typename Host>
  std::vector<std::vector<Vertex>> copies(const Host& g, std::uint64_t budget) const {
    std::set<std::vector<Vertex>> seen;
    std::uint64_t visited = 0;
    bool over = false;
    run(g, free_plan_, nullptr, {}, [&](std::span<const Vertex> image) {
      if (++visited > budget) {
        over = true;
        return true;
      }
      std::vector<Vertex> key(image.begin(), image.end());
      std::sort(key.begin(), key.end());
      seen.insert(std::move(key));
      return false;
    });
    if (over) throw BudgetExceeded("copy enumeration", visited);
    return {seen.begin(), seen.end()};
  }

 private:
  struct Plan {
    std::vector<Vertex> order;                  // pattern vertex at each position
    std::vector<std::vector<std::size_t>> back;  // earlier adjacent positions
    std::vector<int> lower;                      // earlier position whose image must be smaller, or -1
    std::size_t fixed = 0;                       // leading positions supplied by the caller
  };

  Plan make_plan(std::vector<Vertex> prefix, bool symmetric) const {
    Plan plan;
    plan.fixed = prefix.size();
    std::vector<bool> placed(k_, false);
    plan.order = prefix;
    for (Vertex v : prefix) placed[v] = true;
    while (plan.order.size() < k_) {
      // Most already-placed neighbours first, then highest degree, then index.
      int best = -1;
      int best_conn = -1, best_deg = -1;
      for (Vertex v = 0; v < k_; ++v) {
        if (placed[v]) continue;
        int conn = 0;
        for (Vertex w : plan.order) conn += static_cast<int>(masks_[v] >> w & 1u);
        const int deg = std::popcount(masks_[v]);
        if (conn > best_conn || (conn == best_conn && deg > best_deg)) {
          best = static_cast<int>(v);
          best_conn = conn;
          best_deg = deg;
        }
      }
      placed[static_cast<std::size_t>(best)] = true;
      plan.order.push_back(static_cast<Vertex>(best));
    }
    plan.back.resize(k_);
    plan.lower.assign(k_, -1);
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (masks_[plan.order[i]] >> plan.order[j] & 1u) plan.back[i].push_back(j);
        if (symmetric && class_of_[plan.order[i]] == class_of_[plan.order[j]]) plan.lower[i] = static_cast<int>(j);
      }
    }
    return plan;
  }

  template <typename Host>
  static VertexSet image_set(const Host& g, std::span<const Vertex> image) {
    VertexSet s(g.vertex_count());
    for (Vertex v : image) s.insert(v);
    return s;
  }

  template <typename Host, typename Visit>
  void run(const Host& g, const Plan& plan, const VertexSet* allowed, std::span<const Vertex> fixed,
           Visit&& visit) const {
    const std::size_t n = g.vertex_count();
    const std::size_t nw = g.word_count();
    if (k_ > n) return;
    if (allowed && allowed->universe() != n) throw InvalidArgument("allowed set universe does not match host");
    if (allowed && allowed->size() < k_) return;

    std::vector<Word> allow(nw, ~Word{0});
    if (allowed) {
      std::copy(allowed->data(), allowed->data() + nw, allow.begin());
    } else if (n % kWordBits) {
      allow.back() = (Word{1} << (n % kWordBits)) - 1;
    }

    std::vector<Vertex> image(k_, 0);
    std::vector<Word> used(nw, 0);
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      const Vertex v = fixed[i];
      if (v >= n || !bits::test(allow.data(), v) || bits::test(used.data(), v)) return;
      for (std::size_t j : plan.back[i])
        if (!bits::test(g.row(image[j]), v)) return;
      image[i] = v;
      bits::set(used.data(), v);
    }

    std::vector<Word> cand(k_ * nw, 0);
    // Iterative depth-first search; `cursor[d]` is the next bit to try.
    std::vector<std::size_t> cursor(k_ + 1, 0);
    std::size_t depth = fixed.size();
    if (depth == k_) {
      visit(std::span<const Vertex>(image));
      return;
    }
    auto fill = [&](std::size_t d) {
      Word* c = cand.data() + d * nw;
      for (std::size_t w = 0; w < nw; ++w) c[w] = allow[w] & ~used[w];
      for (std::size_t j : plan.back[d]) {
        const Word* r = g.row(image[j]);
        for (std::size_t w = 0; w < nw; ++w) c[w] &= r[w];
      }
      if (plan.lower[d] >= 0) bits::clear_through(c, nw, image[static_cast<std::size_t>(plan.lower[d])]);
      cursor[d] = 0;
    };
    fill(depth);
    const std::size_t base = depth;
    for (;;) {
      const std::size_t v = bits::next(cand.data() + depth * nw, nw, cursor[depth]);
      if (v == static_cast<std::size_t>(-1)) {
        if (depth == base) return;
        --depth;
        bits::reset(used.data(), image[depth]);
        continue;
      }
      cursor[depth] = v + 1;
      image[depth] = static_cast<Vertex>(v);
      if (depth + 1 == k_) {
        if (visit(std::span<const Vertex>(image))) return;
        continue;
      }
      bits::set(used.data(), v);
      ++depth;
      fill(depth);
    }
  }

  std::size_t k_;
  Pattern::Kind kind_;
  std::vector<std::uint32_t> masks_;
  std::vector<std::vector<Vertex>> classes_;
  std::vector<std::size_t> class_of_;
  Plan free_plan_;
  std::vector<Plan> vertex_plans_;
  std::vector<Plan> edge_plans_;
};

// Does G contain P as a subgraph?  Returns the image vertex set of one copy.
inline std::optional<VertexSet> find_pattern(const Graph& g, const Pattern& p) { return PatternMatcher(p).find(g); }

inline bool contains_pattern(const Graph& g, const Pattern& p) { return find_pattern(g, p).has_value(); }

// Same question for G[S] without materialising the induced subgraph.
inline std::optional<VertexSet> find_pattern_within(const Graph& g, const VertexSet& s, const Pattern& p) {
  return PatternMatcher(p).find(g, &s);
}

}  // namespace ergo
