#pragma once

// End-to-end procedures: sample-and-delete sparsification, the multipartite
// construction pipeline, alpha_F upper-bound verification, random Turán
// experiments for C4, the first-moment numerics and exponent calculators.

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ergo/bitset.hpp"
#include "ergo/constructions.hpp"
#include "ergo/containers.hpp"
#include "ergo/error.hpp"
#include "ergo/graph.hpp"
#include "ergo/independence.hpp"
#include "ergo/parallel.hpp"
#include "ergo/pattern.hpp"
#include "ergo/random.hpp"
#include "ergo/rational.hpp"
#include "ergo/subgraph_search.hpp"
#include "ergo/unital.hpp"

namespace ergo {

// ---------------------------------------------------------------------------
// Parameters of the sample-and-delete theorem (natural logarithms).

struct SparsifyParams {
  Rational alpha, beta, theta;
  double gamma = 1, delta = 1;
  double c = 1e-3;
  std::uint64_t n = 0;
  std::uint64_t s = 0;  // ceil(n^{beta/(1-alpha)} (log n)^{3/(1-alpha)})
  double p = 0;         // 2 c s / n^theta
  double m = 0;         // c s n^{1-theta}
  bool p_feasible = false;  // p <= 1; false means n is below the theorem's N for this c

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["alpha"] = alpha.to_string();
    j["beta"] = beta.to_string();
    j["theta"] = theta.to_string();
    j["gamma"] = gamma;
    j["delta"] = delta;
    j["c"] = c;
    j["n"] = n;
    j["s"] = s;
    j["p"] = p;
    j["m"] = m;
    j["p_feasible"] = p_feasible;
    return j;
  }
};

struct ExponentPair {
  Rational beta, theta;
};

// k3: (1/3, 2/3); k4: (1/4, 1/2); kt(t): (1/(2t-3), 1/2 + 1/(4t-6)).
inline ExponentPair preset_k3() { return {Rational(1, 3), Rational(2, 3)}; }
inline ExponentPair preset_k4() { return {Rational(1, 4), Rational(1, 2)}; }
inline ExponentPair preset_kt(std::int64_t t) {
  if (t < 3) throw InvalidArgument("preset kt needs t >= 3");
  return {Rational(1, 2 * t - 3), Rational(1, 2) + Rational(1, 4 * t - 6)};
}

// Throws InvalidArgument unless 0 <= alpha < 1, 0 < theta < 1, beta > 0 and
// beta < theta (1 - alpha), checked exactly.  p > 1 is reported through
// p_feasible rather than thrown.
inline SparsifyParams theorem13_params(const Rational& alpha, const Rational& beta, const Rational& theta,
                                       std::uint64_t n, double c, double gamma = 1, double delta = 1) {
  if (alpha < Rational(0) || !(alpha < Rational(1))) throw InvalidArgument("need 0 <= alpha < 1");
  if (!(Rational(0) < theta) || !(theta < Rational(1))) throw InvalidArgument("need 0 < theta < 1");
  if (!(Rational(0) < beta)) throw InvalidArgument("need beta > 0");
  if (!(beta < theta * (Rational(1) - alpha)))
    throw InvalidArgument("need beta < theta (1 - alpha): " + beta.to_string() + " >= " +
                          (theta * (Rational(1) - alpha)).to_string());
  if (!(c > 0) || !(gamma > 0) || !(delta > 0)) throw InvalidArgument("need c, gamma, delta > 0");
  if (n < 3) throw InvalidArgument("need n >= 3");
  SparsifyParams sp;
  sp.alpha = alpha;
  sp.beta = beta;
  sp.theta = theta;
  sp.gamma = gamma;
  sp.delta = delta;
  sp.c = c;
  sp.n = n;
  const double nd = static_cast<double>(n), ln = std::log(nd);
  const double one_minus = 1 - alpha.to_double();
  const double raw = std::pow(nd, beta.to_double() / one_minus) * std::pow(ln, 3 / one_minus);
  if (!(raw < 9e15)) throw InvalidArgument("s does not fit in 53 bits");
  sp.s = static_cast<std::uint64_t>(std::ceil(raw * (1 - 1e-15)));
  const double sd = static_cast<double>(sp.s);
  sp.p = 2 * c * sd / std::pow(nd, theta.to_double());
  sp.m = c * sd * std::pow(nd, 1 - theta.to_double());
  sp.p_feasible = sp.p <= 1;
  return sp;
}

// ---------------------------------------------------------------------------
// alpha_F upper-bound verification: "no F-independent set of size s".

enum class VerifyMode { exact, falsify };

struct AlphaVerdict {
  bool holds = false;               // no F-independent s-set found
  VerifyMode mode = VerifyMode::exact;
  std::optional<VertexSet> witness; // an F-independent s-set when !holds
  std::uint64_t samples = 0;        // falsify mode
};

// Exact: branch-and-bound (throws BudgetExceeded).  Falsify: k uniform
// s-subsets and k seeded greedy F-independent sets.
inline AlphaVerdict verify_alpha_upper(const Graph& g, const Pattern& p, std::size_t s, VerifyMode mode,
                                       std::uint64_t k = 1000, std::uint64_t seed = 0,
                                       std::uint64_t budget = kDefaultNodeBudget) {
  AlphaVerdict v;
  v.mode = mode;
  const std::size_t n = g.vertex_count();
  if (s > n) {
    v.holds = true;
    return v;
  }
  if (mode == VerifyMode::exact) {
    v.witness = find_pattern_free_set(g, p, s, budget);
    v.holds = !v.witness.has_value();
    return v;
  }
  PatternMatcher matcher(p);
  SplitMix64 rng(seed);
  for (std::uint64_t i = 0; i < k; ++i) {
    auto perm = random_permutation(n, rng);
    VertexSet cand = VertexSet::of(n, std::vector<Vertex>(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(s)));
    ++v.samples;
    if (!matcher.find(g, &cand)) {
      v.witness = std::move(cand);
      return v;
    }
    VertexSet greedy = max_pattern_free_greedy(g, p, rng.next());
    ++v.samples;
    if (greedy.size() >= s) {
      VertexSet w(n);
      for (Vertex x : greedy.members()) {
        if (w.size() == s) break;
        w.insert(x);
      }
      v.witness = std::move(w);
      return v;
    }
  }
  v.holds = true;
  return v;
}

// ---------------------------------------------------------------------------
// Sample-and-delete.

struct PipelineReport {
  std::string input;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t s = 0;
  double p = 0;
  std::size_t b_size = 0;
  std::uint64_t bad_sets = 0;
  bool bad_sets_exact = true;  // false: enumeration hit its budget
  std::size_t deletions = 0;
  std::size_t output_size = 0;
  std::string verdict;         // verified-exact | falsification-passed(k) | budget-exceeded | counterexample
  std::optional<bool> clique_free;  // K_{r+2}-freeness of the output (multipartite pipeline)
  std::optional<std::int64_t> micros;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["input"] = input;
    j["seed"] = seed;
    j["n"] = n;
    j["s"] = s;
    j["p"] = p;
    j["B"] = b_size;
    j["F"] = bad_sets;
    j["F_exact"] = bad_sets_exact;
    j["deletions"] = deletions;
    j["V_out"] = output_size;
    j["verdict"] = verdict;
    if (clique_free) j["clique_free"] = *clique_free;
    for (auto& [k, v] : extra.items()) j[k] = v;
    if (micros) j["micros"] = *micros;
    return j;
  }

  static std::string csv_header() { return "seed,n,s,p,B,F,deletions,V_out,verdict,micros"; }
  std::string csv_row() const {
    char pbuf[32];
    const auto end = std::to_chars(pbuf, pbuf + sizeof pbuf, p).ptr;  // shortest round-trip form
    std::ostringstream o;
    o << seed << ',' << n << ',' << s << ',' << std::string_view(pbuf, static_cast<std::size_t>(end - pbuf)) << ',' << b_size << ',' << bad_sets << ',' << deletions << ','
      << output_size << ',' << verdict << ',';
    if (micros) o << *micros;
    return o.str();
  }
};

struct SparsifyResult {
  Graph graph;                   // G' = G[B']
  std::vector<Vertex> vertices;  // B' in G's labels, ascending
  PipelineReport report;
};

inline constexpr std::size_t kMaxExactVerifyVertices = 40;

namespace detail {

// Lexicographic DFS over F-independent s-subsets of `pool` (ascending).
// visit(set) is called for each; returns false if the budget ran out.
template <typename Visit>
bool enumerate_free_sets(const Graph& g, const Pattern& p, const std::vector<Vertex>& pool, std::size_t s,
                         std::uint64_t budget, std::uint64_t& nodes, Visit&& visit) {
  PatternMatcher matcher(p);
  VertexSet cur(g.vertex_count());
  std::vector<Vertex> stack;
  bool over = false;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (stack.size() == s) {
      visit(stack);
      return;
    }
    for (std::size_t i = from; i + (s - stack.size()) <= pool.size(); ++i) {
      if (++nodes > budget) {
        over = true;
        return;
      }
      const Vertex v = pool[i];
      cur.insert(v);
      if (p.vertex_count() > 1 && !matcher.find_through_vertex(g, &cur, v)) {
        stack.push_back(v);
        self(self, i + 1);
        stack.pop_back();
      }
      cur.erase(v);
      if (over) return;
    }
  };
  if (p.vertex_count() > 1 && s >= 1) rec(rec, 0);
  return !over;
}

inline std::int64_t elapsed_micros(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

struct SparsifyOptions {
  std::uint64_t enumeration_budget = 50'000'000;
  std::uint64_t falsify_samples = 200;
  bool record_timing = false;
};

// B keeps each vertex with probability p (one draw per vertex, ascending);
// F = all F-independent s-subsets of B in lexicographic order; each set still
// intact when reached loses its lowest vertex.  The output is verified exactly
// when it has at most 40 vertices, by falsification otherwise.
inline SparsifyResult sparsify_delete(const Graph& g, const Pattern& p, std::size_t s, double prob,
                                      std::uint64_t seed, const SparsifyOptions& opt = {}) {
  if (!(prob > 0 && prob <= 1)) throw InvalidArgument("sparsify needs p in (0, 1]");
  if (s < 2) throw InvalidArgument("sparsify needs s >= 2");
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = g.vertex_count();
  SparsifyResult out;
  auto& rep = out.report;
  rep.input = g.label() + " " + p.name();
  rep.seed = seed;
  rep.n = n;
  rep.s = s;
  rep.p = prob;

  SplitMix64 rng(seed);
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < n; ++v)
    if (rng.bernoulli(prob)) pool.push_back(v);
  rep.b_size = pool.size();

  std::vector<char> alive(n, 0);
  for (Vertex v : pool) alive[v] = 1;
  std::uint64_t nodes = 0;
  const bool complete = detail::enumerate_free_sets(g, p, pool, s, opt.enumeration_budget, nodes,
                                                    [&](const std::vector<Vertex>& set) {
                                                      ++rep.bad_sets;
                                                      if (std::all_of(set.begin(), set.end(),
                                                                      [&](Vertex v) { return alive[v]; })) {
                                                        alive[set.front()] = 0;
                                                        ++rep.deletions;
                                                      }
                                                    });
  rep.bad_sets_exact = complete;
  for (Vertex v : pool)
    if (alive[v]) out.vertices.push_back(v);
  out.graph = induced_subgraph(g, out.vertices);
  rep.output_size = out.vertices.size();
  if (rep.output_size < rep.b_size - rep.deletions) throw InvariantViolation("more vertices lost than deletions");

  if (!complete) {
    rep.verdict = "budget-exceeded";
  } else if (rep.output_size <= kMaxExactVerifyVertices) {
    try {
      const auto v = verify_alpha_upper(out.graph, p, s, VerifyMode::exact, 0, 0, opt.enumeration_budget);
      rep.verdict = v.holds ? "verified-exact" : "counterexample";
    } catch (const BudgetExceeded&) {
      rep.verdict = "budget-exceeded";
    }
  } else {
    const auto v = verify_alpha_upper(out.graph, p, s, VerifyMode::falsify, opt.falsify_samples, derive_seed(seed, 1));
    rep.verdict = v.holds ? "falsification-passed(" + std::to_string(v.samples) + ")" : "counterexample";
  }
  if (rep.verdict == "counterexample")
    throw InvariantViolation("sparsify output still has an F-independent s-set");
  if (opt.record_timing) rep.micros = detail::elapsed_micros(t0);
  return out;
}

// ---------------------------------------------------------------------------
// Multipartite pipeline: unital -> overlay -> keep each x with probability
// q^{-1/(s-1)} -> delete one vertex from each detected F-independent a-set.

struct MVPipelineOptions {
  std::uint64_t samples = 200;              // consecutive misses before stopping (sampled mode)
  std::uint64_t budget = 20'000'000;        // exact-mode node budget
  bool record_timing = false;
};

struct MVPipelineResult {
  Graph graph;
  std::vector<Vertex> vertices;  // surviving X vertices
  PipelineReport report;
};

inline MVPipelineResult theorem14_pipeline(std::uint32_t q, std::size_t r, const std::vector<std::size_t>& signature,
                                           std::uint64_t seed, const MVPipelineOptions& opt = {}) {
  if (!is_prime(q)) throw InvalidArgument("q = " + std::to_string(q) + " is not prime");
  if (r < 2) throw InvalidArgument("need r >= 2");
  if (signature.size() != r) throw InvalidArgument("signature must have r part sizes");
  const auto t0 = std::chrono::steady_clock::now();
  const Pattern pat = Pattern::complete_multipartite(signature);
  const std::size_t s = pat.vertex_count();
  const auto js = js_parameters(q, s);

  const auto inc = hermitian_unital(q);
  const auto overlay = mv_partite_graph(inc, r, derive_seed(seed, 0));
  const Graph& h = overlay.graph;

  MVPipelineResult out;
  auto& rep = out.report;
  rep.input = "mv q=" + std::to_string(q) + " r=" + std::to_string(r) + " " + pat.name();
  rep.seed = seed;
  rep.n = h.vertex_count();
  rep.s = js.a;
  rep.p = js.keep_p;

  SplitMix64 keep(derive_seed(seed, 1));
  std::vector<Vertex> alive;
  for (Vertex x = 0; x < h.vertex_count(); ++x)
    if (keep.bernoulli(js.keep_p)) alive.push_back(x);
  rep.b_size = alive.size();

  auto current = [&] { return induced_subgraph(h, alive); };
  auto drop_lowest = [&](const VertexSet& bad) {  // bad is in current labels
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(bad.first()));
    ++rep.deletions;
    ++rep.bad_sets;
  };

  if (alive.size() <= kMaxExactVerifyVertices) {
    bool ok = true;
    try {
      for (;;) {
        const Graph cur = current();
        const auto w = find_pattern_free_set(cur, pat, js.a, opt.budget);
        if (!w) break;
        drop_lowest(*w);
      }
    } catch (const BudgetExceeded&) {
      ok = false;
    }
    rep.verdict = ok ? "verified-exact" : "budget-exceeded";
    rep.bad_sets_exact = ok;
  } else {
    rep.bad_sets_exact = false;
    SplitMix64 rng(derive_seed(seed, 2));
    std::uint64_t misses = 0, tried = 0;
    while (misses < opt.samples) {
      const Graph cur = current();
      const auto g = max_pattern_free_greedy(cur, pat, rng.next());
      ++tried;
      if (g.size() >= js.a) {
        VertexSet bad(cur.vertex_count());
        for (Vertex x : g.members()) {
          if (bad.size() == js.a) break;
          bad.insert(x);
        }
        drop_lowest(bad);
        misses = 0;
      } else {
        ++misses;
      }
    }
    rep.verdict = "falsification-passed(" + std::to_string(tried) + ")";
  }
  out.vertices = alive;
  out.graph = current();
  out.graph.set_label("mv-pipeline");
  rep.output_size = alive.size();
  if (q <= 5) {
    rep.clique_free = !contains_pattern(out.graph, Pattern::clique(r + 2));
    if (!*rep.clique_free) throw InvariantViolation("pipeline output contains K_{r+2}");
  }
  rep.extra["a"] = js.a;
  rep.extra["keep_p"] = js.keep_p;
  rep.extra["X"] = h.vertex_count();
  rep.extra["H_edges"] = h.edge_count();
  if (opt.record_timing) rep.micros = detail::elapsed_micros(t0);
  return out;
}

// ---------------------------------------------------------------------------
// Random Turán experiments for C4.

inline constexpr std::size_t kMaxExactTuranVertices = 14;

struct RandomTuranTrial {
  std::uint64_t seed = 0;
  std::size_t host_edges = 0;
  std::size_t best = 0;   // largest C4-free subgraph found
  bool exact = false;
};

struct RandomTuranStats {
  std::size_t n = 0;
  double p = 0;
  std::uint64_t seed = 0;
  std::vector<RandomTuranTrial> trials;
  double mean = 0;
  std::size_t max = 0;
  double scale = 0;     // p^{1/2} n^{3/2}
  double ratio = 0;     // mean / scale (0 when scale is 0)
  bool heuristic = false;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["p"] = p;
    j["seed"] = seed;
    auto t = nlohmann::ordered_json::array();
    for (const auto& tr : trials) t.push_back({{"seed", tr.seed}, {"edges", tr.host_edges}, {"best", tr.best}, {"exact", tr.exact}});
    j["trials"] = std::move(t);
    j["mean"] = mean;
    j["max"] = max;
    j["scale"] = scale;
    j["ratio"] = ratio;
    j["heuristic"] = heuristic;
    return j;
  }
};

// Greedy C4-free subgraph: host edges in seeded random order, kept when they
// close no C4.  A lower bound on ex(G, C4).
inline std::size_t greedy_c4_free_edges(const Graph& host, std::uint64_t seed) {
  const Pattern c4 = Pattern::cycle(4);
  PatternMatcher m(c4);
  auto edges = host.edges();
  SplitMix64 rng(seed);
  shuffle(edges, rng);
  EdgeSetHost cur(host.vertex_count());
  std::size_t kept = 0;
  for (auto [a, b] : edges) {
    cur.add(a, b);
    if (m.has_copy_through_edge(cur, nullptr, a, b))
      cur.remove(a, b);
    else
      ++kept;
  }
  return kept;
}

struct C4SearchResult {
  std::size_t edges = 0;
  bool complete = false;
  std::uint64_t nodes = 0;
};

// Exact maximum C4-free subgraph for hosts on at most 64 vertices.  Include /
// exclude branching over host edges with one-word adjacency masks, seeded
// with the greedy value.  Pruning uses the pair count: in a C4-free graph two
// vertices share at most one neighbour, so sum_v C(d_v, 2) is at most the
// number of pairs that still have a possible common neighbour.  The
// cheapest way to spend the remaining pair budget (raise the lowest degrees
// first) bounds how many more edge endpoints fit.
inline C4SearchResult max_c4_free_subgraph(const Graph& host, std::uint64_t node_budget, std::uint64_t seed = 0) {
  using Mask = std::uint64_t;
  const std::size_t n = host.vertex_count();
  if (n > 64) throw InvalidArgument("max_c4_free_subgraph needs at most 64 vertices");
  const auto edges = host.edges();
  C4SearchResult res;
  res.edges = greedy_c4_free_edges(host, seed);
  std::array<Mask, 64> adj{};
  std::array<int, 64> deg{};
  std::int64_t pair_use = 0;
  std::size_t chosen = 0;
  bool over = false;

  auto bit = [](std::size_t v) { return Mask{1} << v; };
  auto closes = [&](Vertex a, Vertex b) {
    const Mask nb = adj[b] & ~bit(a);
    for (Mask x = adj[a] & ~bit(b); x; x &= x - 1) {
      const auto c = static_cast<std::size_t>(std::countr_zero(x));
      if (adj[c] & nb & ~bit(c)) return true;
    }
    return false;
  };
  auto link = [&](Vertex a, Vertex b) {
    pair_use += deg[a] + deg[b];
    ++deg[a], ++deg[b];
    adj[a] |= bit(b), adj[b] |= bit(a);
  };
  auto unlink = [&](Vertex a, Vertex b) {
    --deg[a], --deg[b];
    pair_use -= deg[a] + deg[b];
    adj[a] &= ~bit(b), adj[b] &= ~bit(a);
  };
  auto bound = [&](const std::vector<std::uint32_t>& cands, std::size_t head) {
    std::array<int, 64> spare{}, d{};
    std::array<Mask, 64> reach = adj;
    for (std::size_t i = head; i < cands.size(); ++i) {
      const auto [x, y] = edges[cands[i]];
      ++spare[x], ++spare[y];
      reach[x] |= bit(y), reach[y] |= bit(x);
    }
    // Only pairs that can still acquire a common neighbour take part.
    std::int64_t pairs = 0;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) pairs += (reach[x] & reach[y]) != 0;
    d = deg;
    std::int64_t budget = pairs - pair_use;
    std::size_t ends = 0;
    for (;;) {
      std::size_t pick = n;
      for (std::size_t v = 0; v < n; ++v)
        if (spare[v] > 0 && (pick == n || d[v] < d[pick])) pick = v;
      if (pick == n || d[pick] > budget) break;
      budget -= d[pick];
      ++d[pick], --spare[pick], ++ends;
    }
    return chosen + std::min(cands.size() - head, ends / 2);
  };

  auto recurse = [&](auto&& self, const std::vector<std::uint32_t>& cands) -> void {
    if (++res.nodes > node_budget) {
      over = true;
      return;
    }
    res.edges = std::max(res.edges, chosen);
    std::size_t head = 0;
    while (head < cands.size()) {
      if (bound(cands, head) <= res.edges) return;
      const auto [a, b] = edges[cands[head++]];
      link(a, b);
      ++chosen;
      std::vector<std::uint32_t> next;
      next.reserve(cands.size() - head);
      for (std::size_t i = head; i < cands.size(); ++i) {
        const auto [x, y] = edges[cands[i]];
        link(x, y);
        if (!closes(x, y)) next.push_back(cands[i]);
        unlink(x, y);
      }
      self(self, next);
      --chosen;
      unlink(a, b);
      if (over) return;
    }
  };
  std::vector<std::uint32_t> all(edges.size());
  std::iota(all.begin(), all.end(), 0u);
  recurse(recurse, all);
  res.complete = !over;
  return res;
}

// Trial i samples G(n, p) with derive_seed(seed, i).  Exact for n <= 14 while
// the budget lasts; otherwise the greedy lower bound, flagged heuristic.
inline RandomTuranStats random_turan_experiment(std::size_t n, double p, std::size_t trials, std::uint64_t seed,
                                                std::uint64_t budget = 20'000'000, std::size_t threads = 1) {
  if (!(p >= 0 && p <= 1)) throw InvalidArgument("random_turan needs p in [0, 1]");
  RandomTuranStats st;
  st.n = n;
  st.p = p;
  st.seed = seed;
  st.trials = parallel_map<RandomTuranTrial>(trials, threads, [&](std::size_t i) {
    RandomTuranTrial t;
    t.seed = derive_seed(seed, i);
    const Graph g = gnp(n, p, t.seed);
    t.host_edges = g.edge_count();
    if (n <= kMaxExactTuranVertices) {
      const auto res = max_c4_free_subgraph(g, budget, derive_seed(t.seed, 1));
      t.best = res.edges;
      t.exact = res.complete;
    } else {
      t.best = greedy_c4_free_edges(g, derive_seed(t.seed, 1));
    }
    return t;
  });
  double sum = 0;
  for (const auto& t : st.trials) {
    sum += static_cast<double>(t.best);
    st.max = std::max(st.max, t.best);
    st.heuristic = st.heuristic || !t.exact;
  }
  st.mean = trials ? sum / static_cast<double>(trials) : 0;
  st.scale = std::sqrt(p) * std::pow(static_cast<double>(n), 1.5);
  st.ratio = st.scale > 0 ? st.mean / st.scale : 0;
  return st;
}

// ---------------------------------------------------------------------------
// First-moment numerics, all in natural-log space.

struct C4CountingParams {
  // c = (2^65 / 3)^{1/3}, eps = 3 / (13 2^65).
  static double c() { return std::cbrt(std::ldexp(1.0, 65) / 3.0); }
  static double log_inv_eps() { return std::log(13.0 / 3.0) + 65 * std::numbers::ln2; }
  static double inv_eps() { return 13.0 / 3.0 * std::ldexp(1.0, 65); }
};

// c n^{4/3} (log n)^{1/3}.
inline double kks_threshold(double n) {
  return C4CountingParams::c() * std::pow(n, 4.0 / 3.0) * std::cbrt(std::log(n));
}

// eps^{-1} (n log n)^{4/3}.
inline double kks_entropy_term(double n) { return C4CountingParams::inv_eps() * std::pow(n * std::log(n), 4.0 / 3.0); }

// log of (4 e n^3 / T^2)^T exp(eps^{-1} (n log n)^{4/3}); requires T above
// the threshold.
inline double kks_log_bound(double n, double t) {
  if (!(n >= 2)) throw InvalidArgument("kks bound needs n >= 2");
  const double thr = kks_threshold(n);
  if (!(t > thr))
    throw InvalidArgument("kks bound needs T > c n^{4/3} (log n)^{1/3} = " + std::to_string(thr));
  return t * (std::log(4.0) + 1 + 3 * std::log(n) - 2 * std::log(t)) + kks_entropy_term(n);
}

struct FirstMoment {
  double t = 0;            // ceil(C p^{1/2} n^{3/2})
  double log_expected = 0; // T log(4e / C^2) + eps^{-1} (n log n)^{4/3}
  bool p_in_range = false;       // p >= n^{-1/3} (log n)^{8/3}
  bool p_is_probability = false; // p <= 1
  bool t_gate = false;           // T >= C n^{4/3} (log n)^{4/3}
  bool kks_gate = false;         // T > c n^{4/3} (log n)^{1/3}

  nlohmann::ordered_json to_json() const {
    return {{"T", t},
            {"log_expected", log_expected},
            {"p_in_range", p_in_range},
            {"p_is_probability", p_is_probability},
            {"t_gate", t_gate},
            {"kks_gate", kks_gate}};
  }
};

// Never throws on the regime gates; they are reported.  p > 1 can occur
// because the range's lower end exceeds 1 for moderate n.
inline FirstMoment c4_first_moment_log(double n, double p, double big_c) {
  if (!(n >= 2) || !(p > 0) || !(big_c > 0)) throw InvalidArgument("first moment needs n >= 2, p > 0, C > 0");
  FirstMoment fm;
  const double ln = std::log(n);
  fm.t = std::ceil(big_c * std::sqrt(p) * std::pow(n, 1.5));
  fm.log_expected = fm.t * (std::log(4.0) + 1 - 2 * std::log(big_c)) + kks_entropy_term(n);
  fm.p_in_range = p >= std::pow(n, -1.0 / 3.0) * std::pow(ln, 8.0 / 3.0);
  fm.p_is_probability = p <= 1;
  fm.t_gate = fm.t >= big_c * std::pow(n, 4.0 / 3.0) * std::pow(ln, 4.0 / 3.0);
  fm.kks_gate = fm.t > kks_threshold(n);
  return fm;
}

// ---------------------------------------------------------------------------
// Exponent calculators.

struct ExponentTarget {
  Rational exponent;   // of n
  Rational log_power;  // of log n
};

// F with ex(b, F) = O(b^{1+alpha}) against K3 / K4 hosts (alpha in [0, 1/2)).
inline ExponentTarget target_k3(const Rational& alpha) {
  if (alpha < Rational(0) || !(alpha < Rational(1, 2))) throw InvalidArgument("K3 target needs alpha in [0, 1/2)");
  const Rational den = Rational(2) - alpha;
  return {Rational(1) / den, Rational(3) / den};
}
inline ExponentTarget target_k4(const Rational& alpha) {
  if (alpha < Rational(0) || !(alpha < Rational(1, 2))) throw InvalidArgument("K4 target needs alpha in [0, 1/2)");
  const Rational den = Rational(3) - Rational(2) * alpha;
  return {Rational(1) / den, Rational(6) / den};
}
// K_t host from a pseudorandom K_t-free graph, alpha in [0, (t-2)/(t-1)).
inline ExponentTarget target_kt(const Rational& alpha, std::int64_t t) {
  if (t < 3) throw InvalidArgument("Kt target needs t >= 3");
  if (alpha < Rational(0) || !(alpha < Rational(t - 2, t - 1)))
    throw InvalidArgument("Kt target needs alpha in [0, (t-2)/(t-1))");
  const Rational den = (Rational(1) - alpha) * Rational(t - 2) + Rational(1);
  return {Rational(1) / den, Rational(3 * (t - 2)) / den};
}
// K_{s_1..s_r} against K_{r+2}: ((2s-3)/(4s-5), 3).
inline ExponentTarget target_multipartite(const std::vector<std::size_t>& signature) {
  if (signature.size() < 2) throw InvalidArgument("multipartite target needs r >= 2 parts");
  std::int64_t s = 0;
  for (auto x : signature) {
    if (x < 1) throw InvalidArgument("part sizes must be >= 1");
    s += static_cast<std::int64_t>(x);
  }
  return {Rational(2 * s - 3, 4 * s - 5), Rational(3)};
}
// General sample-and-delete: s <= C m^{beta/D} (log m)^{3(1-theta)/D},
// D = (1-alpha)(1-theta) + beta.
inline ExponentTarget target_general(const Rational& alpha, const Rational& beta, const Rational& theta) {
  const Rational den = (Rational(1) - alpha) * (Rational(1) - theta) + beta;
  if (!(Rational(0) < den)) throw InvalidArgument("degenerate exponent denominator");
  return {beta / den, Rational(3) * (Rational(1) - theta) / den};
}

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root mean square in log space
};

// Least squares of log(value) on log(n).
inline ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw InvalidArgument("exponent_fit needs >= 2 points");
  double sx = 0, sy = 0;
  for (auto [x, y] : points) {
    if (!(x > 0) || !(y > 0)) throw InvalidArgument("exponent_fit needs positive points");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double k = static_cast<double>(points.size());
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0;
  for (auto [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (!(sxx > 0)) throw InvalidArgument("exponent_fit needs at least two distinct n");
  ExponentFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (auto [x, y] : points) {
    const double e = std::log(y) - (f.intercept + f.slope * std::log(x));
    ss += e * e;
  }
  f.residual = std::sqrt(ss / k);
  return f;
}

}  // namespace ergo
