#include <gtest/gtest.h>

#include <algorithm>

#include "ergo/graph.hpp"
#include "ergo/graph_io.hpp"
#include "ergo/independence.hpp"
#include "ergo/pattern.hpp"
#include "ergo/random.hpp"
#include "ergo/subgraph_search.hpp"
#include "oracles.hpp"

using namespace ergo;

namespace {

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

std::vector<Pattern> small_patterns() {
  std::vector<Pattern> ps;
  for (std::size_t t = 2; t <= 5; ++t) ps.push_back(Pattern::clique(t));
  for (std::size_t k = 3; k <= 5; ++k) ps.push_back(Pattern::cycle(k));
  for (auto parts : std::vector<std::vector<std::size_t>>{
           {1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 2}, {2, 3}, {1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {1, 1, 3}, {1, 1, 1, 2}})
    ps.push_back(Pattern::complete_multipartite(parts));
  for (std::size_t k = 2; k <= 5; ++k)
    for (const auto& g : oracle::nonisomorphic_graphs(k))
      if (g.edge_count() > 0) ps.push_back(Pattern::explicit_graph(g));
  return ps;
}

}  // namespace

TEST(GraphFile, ParsesTriangle) {
  const Graph g = parse_graph("3 3\n0 1\n0 2\n1 2");
  EXPECT_EQ(g, complete_graph(3));
}

TEST(GraphFile, ParsesEdgeless) {
  const Graph g = parse_graph("2 0");
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(GraphFile, RejectsMalformedInput) {
  EXPECT_THROW(parse_graph("3 1\n1 0"), FormatError);      // unsorted pair
  EXPECT_THROW(parse_graph("3"), FormatError);             // header
  EXPECT_THROW(parse_graph("x 0"), FormatError);           // header
  EXPECT_THROW(parse_graph("3 1\n0 3"), FormatError);      // out of range
  EXPECT_THROW(parse_graph("3 1\n1 1"), FormatError);      // self-loop
  EXPECT_THROW(parse_graph("3 2\n0 1\n0 1"), FormatError); // duplicate
  EXPECT_THROW(parse_graph("3 2\n0 2\n0 1"), FormatError); // unsorted lines
  EXPECT_THROW(parse_graph("3 2\n0 1"), FormatError);      // count mismatch
  EXPECT_THROW(parse_graph("3 1\n0  1"), FormatError);     // stray whitespace
  EXPECT_THROW(parse_graph("3 1\n0 1 "), FormatError);
}

TEST(GraphFile, RoundTripsBothWays) {
  const std::string canonical = "4 3\n0 1\n1 2\n2 3";
  EXPECT_EQ(emit_graph(parse_graph(canonical)), canonical);
  EXPECT_EQ(emit_graph(parse_graph(canonical + "\n")), canonical);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = random_graph(1 + seed % 23, 0.05 * static_cast<double>(seed % 20), seed);
    const std::string text = emit_graph(g);
    EXPECT_EQ(parse_graph(text), g);
    EXPECT_EQ(emit_graph(parse_graph(text)), text);
  }
}

TEST(InducedSubgraph, CliqueIsHereditary) {
  EXPECT_EQ(induced_subgraph(complete_graph(4), VertexSet(4, {0, 1, 2})), complete_graph(3));
}

TEST(InducedSubgraph, NonAdjacentPairOfC5) {
  const Graph h = induced_subgraph(cycle_graph(5), VertexSet(5, {0, 2}));
  EXPECT_EQ(h.vertex_count(), 2u);
  EXPECT_EQ(h.edge_count(), 0u);
}

TEST(InducedSubgraph, PetersenFiveSetsMatchAdjacency) {
  const Graph g = oracle::kneser_petersen();
  for (std::uint32_t m = 0; m < 1024; ++m) {
    if (__builtin_popcount(m) != 5) continue;
    std::vector<Vertex> members;
    for (Vertex v = 0; v < 10; ++v)
      if (m >> v & 1u) members.push_back(v);
    const Graph h = induced_subgraph(g, members);
    ASSERT_EQ(h.vertex_count(), 5u);
    for (Vertex i = 0; i < 5; ++i)
      for (Vertex j = 0; j < 5; ++j)
        if (i != j) EXPECT_EQ(h.adjacent(i, j), g.adjacent(members[i], members[j]));
  }
}

TEST(InducedSubgraph, RejectsOutOfRangeMember) {
  EXPECT_THROW(induced_subgraph(complete_graph(3), std::vector<Vertex>{0, 3}), InvalidArgument);
}

TEST(Pattern, ValidatesShape) {
  EXPECT_THROW(Pattern::clique(1), InvalidArgument);
  EXPECT_THROW(Pattern::cycle(2), InvalidArgument);
  EXPECT_THROW(Pattern::complete_multipartite({3}), InvalidArgument);
  EXPECT_THROW(Pattern::complete_multipartite({2, 0}), InvalidArgument);
  EXPECT_THROW(Pattern::explicit_graph(Graph(17)), InvalidArgument);
  EXPECT_EQ(parse_pattern("K2,2").vertex_count(), 4u);
  EXPECT_EQ(parse_pattern("K1,1,1").edge_count(), 3u);
  EXPECT_EQ(parse_pattern("C4").name(), "C4");
  EXPECT_THROW(parse_pattern("Q3"), InvalidArgument);
}

TEST(ContainsPattern, Examples) {
  EXPECT_TRUE(contains_pattern(complete_graph(4), Pattern::clique(3)));
  EXPECT_FALSE(contains_pattern(oracle::kneser_petersen(), Pattern::cycle(4)));
  const Graph k33 = complete_multipartite_graph({3, 3});
  const auto w = find_pattern(k33, Pattern::complete_multipartite({2, 2}));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->size(), 4u);
  EXPECT_FALSE(contains_pattern(complete_graph(3), Pattern::clique(4)));
}

TEST(ContainsPattern, WitnessSpansACopy) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_graph(12, 0.4, seed);
    for (const auto& p : {Pattern::clique(3), Pattern::cycle(4), Pattern::complete_multipartite({1, 3})}) {
      const auto w = find_pattern(g, p);
      ASSERT_EQ(w.has_value(), oracle::all_injections_contains(g, p));
      if (w) {
        EXPECT_EQ(w->size(), p.vertex_count());
        EXPECT_TRUE(oracle::all_injections_contains(induced_subgraph(g, *w), p));
      }
    }
  }
}

// Exhaustive over every isomorphism class of graphs with <= 7 vertices.
TEST(ContainsPattern, AgreesWithAllInjectionsOracle) {
  const auto patterns = small_patterns();
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 7; ++n)
    for (const auto& g : oracle::nonisomorphic_graphs(n))
      for (const auto& p : patterns) {
        ASSERT_EQ(contains_pattern(g, p), oracle::all_injections_contains(g, p))
            << emit_graph(g) << " pattern " << p.name();
        ++checked;
      }
  EXPECT_GT(checked, 50000u);
}

TEST(ContainsPattern, AnchoredSearchesAgreeWithOracle) {
  const auto patterns = small_patterns();
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Graph g = random_graph(7, 0.55, seed);
    for (const auto& p : patterns) {
      PatternMatcher m(p);
      for (Vertex v = 0; v < 7; ++v) {
        const bool want = oracle::all_injections_any(g, p, [&](const std::vector<Vertex>& img) {
          return std::find(img.begin(), img.end(), v) != img.end();
        });
        ASSERT_EQ(m.find_through_vertex(g, nullptr, v).has_value(), want) << p.name() << " v=" << v;
      }
      for (const auto& [a, b] : g.edges()) {
        const auto pe = p.graph().edges();
        const bool want = oracle::all_injections_any(g, p, [&](const std::vector<Vertex>& img) {
          for (auto [x, y] : pe)
            if ((img[x] == a && img[y] == b) || (img[x] == b && img[y] == a)) return true;
          return false;
        });
        ASSERT_EQ(m.has_copy_through_edge(g, nullptr, a, b), want) << p.name() << " edge " << a << "," << b;
      }
    }
  }
}

TEST(ContainsPattern, CopiesAreDistinctVertexSets) {
  const auto k4 = complete_graph(4);
  EXPECT_EQ(PatternMatcher(Pattern::clique(3)).copies(k4, 1000).size(), 4u);
  EXPECT_EQ(PatternMatcher(Pattern::complete_multipartite({1, 1})).copies(cycle_graph(5), 1000).size(), 5u);
  // K_{2,2} in K_{3,3}: choose 2 from each side.
  EXPECT_EQ(PatternMatcher(Pattern::cycle(4)).copies(complete_multipartite_graph({3, 3}), 10000).size(), 9u);
  EXPECT_THROW(PatternMatcher(Pattern::clique(2)).copies(complete_graph(10), 5), BudgetExceeded);
}

TEST(MaxPatternFree, Examples) {
  EXPECT_EQ(max_pattern_free_exact(complete_graph(6), Pattern::clique(2)).size(), 1u);
  EXPECT_EQ(max_pattern_free_exact(cycle_graph(5), Pattern::clique(3)).size(), 5u);
  EXPECT_EQ(max_pattern_free_exact(oracle::kneser_petersen(), Pattern::cycle(4)).size(), 10u);
}

TEST(MaxPatternFree, BudgetExceededIsAnError) {
  const Graph g = random_graph(40, 0.5, 3);
  EXPECT_THROW(max_pattern_free_exact(g, Pattern::clique(3), 10), BudgetExceeded);
}

TEST(MaxPatternFree, MatchesSubsetScan) {
  const std::vector<Pattern> ps{Pattern::clique(2), Pattern::clique(3), Pattern::cycle(4),
                                Pattern::complete_multipartite({1, 2}), Pattern::cycle(5)};
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t n = 6 + seed % 7;
    const Graph g = random_graph(n, 0.25 + 0.02 * static_cast<double>(seed), seed + 100);
    for (const auto& p : ps) {
      const VertexSet s = max_pattern_free_exact(g, p);
      EXPECT_FALSE(contains_pattern(induced_subgraph(g, s), p));
      EXPECT_EQ(s.size(), oracle::subset_scan_alpha(g, p)) << "n=" << n << " " << p.name();
    }
  }
}

TEST(MaxPatternFree, IndependenceNumberAgreesWithDedicatedSearch) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 10 + seed % 16;
    const Graph g = random_graph(n, 0.15 + 0.01 * static_cast<double>(seed % 30), 500 + seed);
    EXPECT_EQ(max_pattern_free_exact(g, Pattern::clique(2)).size(), oracle::independence_number(g));
  }
}

TEST(MaxPatternFree, FindsSetOfRequestedSize) {
  const Graph g = oracle::kneser_petersen();
  EXPECT_EQ(find_pattern_free_set(g, Pattern::clique(2), 4)->size(), 4u);
  EXPECT_FALSE(find_pattern_free_set(g, Pattern::clique(2), 5).has_value());
  EXPECT_FALSE(find_pattern_free_set(complete_graph(5), Pattern::clique(3), 3).has_value());
}

TEST(GreedyPatternFree, Examples) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_EQ(max_pattern_free_greedy(complete_graph(6), Pattern::clique(2), seed).size(), 1u);
    EXPECT_EQ(max_pattern_free_greedy(cycle_graph(5), Pattern::clique(3), seed).size(), 5u);
  }
}

TEST(GreedyPatternFree, DeterministicValidAndBelowExact) {
  const Graph g = random_graph(60, 0.3, 1);
  const VertexSet a = max_pattern_free_greedy(g, Pattern::clique(3), 1);
  const VertexSet b = max_pattern_free_greedy(g, Pattern::clique(3), 1);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(contains_pattern(induced_subgraph(g, a), Pattern::clique(3)));
  // On 14-vertex samples of the same graph greedy never beats the exact value.
  SplitMix64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto perm = random_permutation(60, rng);
    perm.resize(14);
    const Graph h = induced_subgraph(g, perm);
    const auto exact = max_pattern_free_exact(h, Pattern::clique(3)).size();
    for (std::uint64_t seed = 0; seed < 5; ++seed)
      EXPECT_LE(max_pattern_free_greedy(h, Pattern::clique(3), seed).size(), exact);
  }
}

TEST(TuranUpper, ExactExamples) {
  EXPECT_EQ(turan_upper(5, Pattern::clique(3), TuranMode::exact).value, 6u);
  EXPECT_EQ(turan_upper(4, Pattern::cycle(4), TuranMode::exact).value, 4u);
  EXPECT_EQ(turan_upper(1, Pattern::cycle(4), TuranMode::exact).value, 0u);
  EXPECT_EQ(turan_upper(1, Pattern::clique(3), TuranMode::bound).value, 0u);
  EXPECT_THROW(turan_upper(9, Pattern::clique(3), TuranMode::exact), InvalidArgument);
  EXPECT_THROW(turan_upper(0, Pattern::clique(3)), InvalidArgument);
}

TEST(TuranUpper, BoundDominatesExactAndIsMonotone) {
  std::vector<Pattern> ps{Pattern::clique(3), Pattern::clique(4), Pattern::cycle(4), Pattern::cycle(5),
                          Pattern::cycle(6), Pattern::complete_multipartite({2, 3}),
                          Pattern::complete_multipartite({1, 3}), Pattern::complete_multipartite({1, 1, 2})};
  Graph path(4);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  ps.push_back(Pattern::explicit_graph(path));
  for (const auto& p : ps) {
    std::uint64_t prev_exact = 0, prev_bound = 0;
    for (std::uint64_t b = 1; b <= 8; ++b) {
      const auto ex = turan_upper(b, p, TuranMode::exact).value;
      const auto bd = turan_upper(b, p, TuranMode::bound).value;
      EXPECT_GE(bd, ex) << p.name() << " b=" << b;
      EXPECT_GE(ex, prev_exact);
      EXPECT_GE(bd, prev_bound);
      prev_exact = ex;
      prev_bound = bd;
    }
    for (std::uint64_t b = 9; b <= 400; ++b) {
      const auto bd = turan_upper(b, p, TuranMode::bound).value;
      EXPECT_GE(bd, prev_bound) << p.name() << " b=" << b;
      prev_bound = bd;
    }
  }
}

TEST(TuranUpper, NeverBelowAnFFreeInducedSubgraph) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_graph(30, 0.3, 900 + seed);
    for (const auto& p : {Pattern::clique(3), Pattern::cycle(4)}) {
      const VertexSet s = max_pattern_free_greedy(g, p, seed);
      const auto e = edges_within(g, s);
      EXPECT_GE(turan_upper(s.size(), p, TuranMode::bound).value, e);
      if (s.size() <= 8) EXPECT_GE(turan_upper(s.size(), p, TuranMode::exact).value, e);
    }
  }
}

TEST(TuranUpper, SmallExactValuesMatchBruteForce) {
  const auto c4 = oracle::brute_force_ex(7, oracle::c4_free);
  const auto k3 = oracle::brute_force_ex(7, oracle::triangle_free);
  for (std::uint64_t b = 1; b <= 7; ++b) {
    EXPECT_EQ(turan_upper(b, Pattern::cycle(4), TuranMode::exact).value, static_cast<std::uint64_t>(c4[b]));
    EXPECT_EQ(turan_upper(b, Pattern::clique(3), TuranMode::exact).value, static_cast<std::uint64_t>(k3[b]));
    EXPECT_EQ(k3[b], static_cast<int>(b * b / 4));
  }
}
