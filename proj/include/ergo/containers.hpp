#pragma once

// Graph container algorithm (fingerprint S_h, T -> container C), its replay
// from the fingerprint alone, the counting bound built on it, and the
// hypergraph statistics used for the multipartite construction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ergo/bitset.hpp"
#include "ergo/constructions.hpp"
#include "ergo/error.hpp"
#include "ergo/graph.hpp"
#include "ergo/independence.hpp"
#include "ergo/parallel.hpp"
#include "ergo/pattern.hpp"
#include "ergo/random.hpp"
#include "ergo/subgraph_search.hpp"
#include "ergo/unital.hpp"

namespace ergo {

// ---------------------------------------------------------------------------
// Container lemma.

using ExFunction = std::function<double(std::uint64_t)>;

// ex(s, F) <= turan_upper(s, F); any admissible bound keeps the lemma valid
// because the proof only uses e(G[S]) <= ex(s, F).
inline ExFunction admissible_ex(const Pattern& p) {
  return [p](std::uint64_t s) { return s == 0 ? 0.0 : static_cast<double>(turan_upper(s, p).value); };
}

struct ContainerParams {
  double d = 0;               // density coefficient
  double r = 0;               // stop once |A_i| <= r
  ExFunction ex_fn;           // s -> upper bound on ex(s, F)
  std::vector<Vertex> order;  // tie-break order pi; empty means ascending index
};

struct ContainerStep {
  std::size_t i = 0;
  Vertex u = 0;
  bool in_s = false;          // branch: u in S (added to T) or not
  std::size_t a_size = 0;     // |A_i|
  std::size_t degree = 0;     // d_{G[A_i]}(u_i)
  std::size_t removed = 0;    // |A_i| - |A_{i+1}|
};

struct ContainerCertificate {
  std::size_t n = 0;
  std::size_t s = 0;
  double d = 0;
  double r = 0;
  double ex = 0;       // ex_fn(s)
  double log_n = 0;
  double delta = 0;    // sqrt(ex d / log n)
  double sh_bound = 0; // 2 sqrt(ex log n / d)
  double t_bound = 0;  // 32 sqrt(ex log n / d)
  std::vector<Vertex> order;
  VertexSet s_h, t, c;
  std::vector<ContainerStep> trace;
  std::size_t k = 0;       // step count
  std::size_t max_t = 0;   // largest counter value reached

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["s"] = s;
    j["d"] = d;
    j["r"] = r;
    j["ex"] = ex;
    j["log_n"] = log_n;
    j["delta"] = delta;
    j["sh_bound"] = sh_bound;
    j["t_bound"] = t_bound;
    if (order.empty())
      j["order"] = "ascending";
    else
      j["order"] = order;
    j["S_h"] = s_h.members();
    j["T"] = t.members();
    j["C"] = c.members();
    j["K"] = k;
    j["max_t"] = max_t;
    auto steps = nlohmann::ordered_json::array();
    for (const auto& st : trace)
      steps.push_back({st.i, st.u, st.in_s ? "in-S" : "not-in-S", st.a_size, st.degree, st.removed});
    j["trace"] = std::move(steps);
    return j;
  }
};

// Outcome of checking one certificate against its S.  Every field is
// recomputed from the sets and the trace, not copied from the algorithm.
struct ContainerCheck {
  bool subset = false;        // S_h and T inside S
  bool coverage = false;      // S \ (S_h u T) inside C
  bool sh_size = false;       // |S_h| <= 2 sqrt(ex log n / d)
  bool t_size = false;        // |T| <= 32 sqrt(ex log n / d)
  bool c_size = false;        // |C| <= r
  bool loop = false;          // |A_i| strictly decreasing, t <= Delta + 1
  bool passed() const noexcept { return subset && coverage && sh_size && t_size && c_size && loop; }
  std::string failures() const {
    std::string out;
    auto add = [&](bool ok, const char* name) {
      if (!ok) out += out.empty() ? name : std::string(",") + name;
    };
    add(subset, "subset");
    add(coverage, "coverage");
    add(sh_size, "sh_size");
    add(t_size, "t_size");
    add(c_size, "c_size");
    add(loop, "loop");
    return out;
  }
};

namespace detail {

inline std::vector<std::uint32_t> order_ranks(std::size_t n, const std::vector<Vertex>& order) {
  std::vector<std::uint32_t> rank(n);
  if (order.empty()) {
    std::iota(rank.begin(), rank.end(), 0u);
    return rank;
  }
  if (order.size() != n) throw InvalidArgument("vertex order must list every vertex once");
  std::vector<char> seen(n, 0);
  for (std::uint32_t k = 0; k < n; ++k) {
    const Vertex v = order[k];
    if (v >= n || seen[v]) throw InvalidArgument("vertex order is not a permutation");
    seen[v] = 1;
    rank[v] = k;
  }
  return rank;
}

inline void check_params(const Graph& g, const ContainerParams& params) {
  if (!(params.d > 0) || !std::isfinite(params.d)) throw InvalidArgument("container needs d > 0");
  if (!(params.r >= 0)) throw InvalidArgument("container needs r >= 0");
  if (!params.ex_fn) throw InvalidArgument("container needs an ex_fn");
  if (g.vertex_count() < 2) throw InvalidArgument("container needs n >= 2 (log n > 0)");
}

struct LoopResult {
  VertexSet t, c;
  std::vector<ContainerStep> trace;
  std::size_t max_t = 0;
};

// The main loop.  take(u) decides the branch: u in S when extracting, u in T
// when replaying.  Both loop invariants are asserted at every step.
template <typename Take>
LoopResult container_loop(const Graph& g, const VertexSet& s_h, double delta, double r,
                          const std::vector<std::uint32_t>& rank, Take&& take) {
  const std::size_t n = g.vertex_count();
  LoopResult out{VertexSet(n), s_h.complement(), {}, 0};
  VertexSet& a = out.c;
  std::vector<std::size_t> deg(n, 0), t(n, 0);
  a.for_each([&](Vertex v) { deg[v] = bits::and_count(g.row(v), a.data(), a.word_count()); });

  auto remove = [&](Vertex w) {
    a.erase(w);
    bits::for_each(g.row(w), g.word_count(), [&](Vertex v) {
      if (a.contains(v)) --deg[v];
      return true;
    });
  };

  for (std::size_t i = 0; static_cast<double>(a.size()) > r; ++i) {
    Vertex u = 0;
    bool found = false;
    a.for_each([&](Vertex v) {
      if (!found || deg[v] > deg[u] || (deg[v] == deg[u] && rank[v] < rank[u])) {
        u = v;
        found = true;
      }
    });
    ContainerStep step{i, u, take(u), a.size(), deg[u], 0};
    if (step.in_s) {
      out.t.insert(u);
      std::vector<Vertex> nb;
      bits::for_each(g.row(u), g.word_count(), [&](Vertex v) {
        if (a.contains(v)) nb.push_back(v);
        return true;
      });
      remove(u);
      for (Vertex v : nb) {
        out.max_t = std::max(out.max_t, ++t[v]);
        if (static_cast<double>(t[v]) > delta && a.contains(v)) remove(v);
      }
    } else {
      remove(u);
    }
    step.removed = step.a_size - a.size();
    if (step.removed < 1) throw InvariantViolation("container loop: |A| did not decrease");
    if (static_cast<double>(out.max_t) > delta + 1) throw InvariantViolation("container loop: t exceeded Delta + 1");
    out.trace.push_back(step);
  }
  return out;
}

}  // namespace detail

// Runs the container algorithm on an F-independent S.  Throws
// InvalidArgument if S contains F, if ex_fn(|S|) is below e(G[S]), or if the
// hypothesis ex_fn(|S|) d >= log n fails (natural log).
inline ContainerCertificate compute_container(const Graph& g, const VertexSet& s, const Pattern& p,
                                              const ContainerParams& params) {
  detail::check_params(g, params);
  const std::size_t n = g.vertex_count();
  if (s.universe() != n) throw InvalidArgument("S is over a different vertex set");
  if (find_pattern_within(g, s, p)) throw InvalidArgument("S is not " + p.name() + "-independent");

  ContainerCertificate cert;
  cert.n = n;
  cert.s = s.size();
  cert.d = params.d;
  cert.r = params.r;
  cert.order = params.order;
  cert.ex = params.ex_fn(cert.s);
  cert.log_n = std::log(static_cast<double>(n));
  if (static_cast<double>(edges_within(g, s)) > cert.ex)
    throw InvalidArgument("ex_fn(|S|) = " + std::to_string(cert.ex) + " is below e(G[S])");
  if (cert.ex * params.d < cert.log_n)
    throw InvalidArgument("hypothesis ex(|S|, F) d >= log n fails: " + std::to_string(cert.ex * params.d) + " < " +
                          std::to_string(cert.log_n));
  cert.delta = std::sqrt(cert.ex * params.d / cert.log_n);
  const double root = std::sqrt(cert.ex * cert.log_n / params.d);
  cert.sh_bound = 2 * root;
  cert.t_bound = 32 * root;

  cert.s_h = VertexSet(n);
  s.for_each([&](Vertex v) {
    if (static_cast<double>(degree_into(g, v, s)) >= cert.delta) cert.s_h.insert(v);
  });
  const auto rank = detail::order_ranks(n, params.order);
  auto run = detail::container_loop(g, cert.s_h, cert.delta, params.r, rank, [&](Vertex u) { return s.contains(u); });
  cert.t = std::move(run.t);
  cert.c = std::move(run.c);
  cert.trace = std::move(run.trace);
  cert.k = cert.trace.size();
  cert.max_t = run.max_t;
  return cert;
}

// Rebuilds C from (S_h, T, |S|) by branching on u in T.  Throws
// InvalidArgument when the fingerprint cannot have come from the algorithm
// (T meets S_h, or some vertex of T is never chosen).
inline VertexSet reconstruct_container(const Graph& g, const VertexSet& s_h, const VertexSet& t, std::size_t s,
                                       const ContainerParams& params) {
  detail::check_params(g, params);
  const std::size_t n = g.vertex_count();
  if (s_h.universe() != n || t.universe() != n) throw InvalidArgument("fingerprint is over a different vertex set");
  if (s_h.intersects(t)) throw InvalidArgument("inconsistent fingerprint: T meets S_h");
  if (s_h.size() + t.size() > s) throw InvalidArgument("inconsistent fingerprint: |S_h| + |T| > s");
  const double ex = params.ex_fn(s);
  const double log_n = std::log(static_cast<double>(n));
  if (ex * params.d < log_n) throw InvalidArgument("hypothesis ex(s, F) d >= log n fails");
  const double delta = std::sqrt(ex * params.d / log_n);
  const auto rank = detail::order_ranks(n, params.order);
  auto run = detail::container_loop(g, s_h, delta, params.r, rank, [&](Vertex u) { return t.contains(u); });
  if (!(run.t == t)) throw InvalidArgument("inconsistent fingerprint: some vertex of T is never chosen");
  return run.c;
}

// Checks the four conclusions and the loop invariants for one certificate.
inline ContainerCheck check_container(const ContainerCertificate& cert, const VertexSet& s) {
  ContainerCheck c;
  c.subset = cert.s_h.is_subset_of(s) && cert.t.is_subset_of(s);
  c.coverage = (s - cert.s_h - cert.t).is_subset_of(cert.c);
  const double root = std::sqrt(cert.ex * cert.log_n / cert.d);
  c.sh_size = static_cast<double>(cert.s_h.size()) <= 2 * root;
  c.t_size = static_cast<double>(cert.t.size()) <= 32 * root;
  c.c_size = static_cast<double>(cert.c.size()) <= cert.r;
  c.loop = static_cast<double>(cert.max_t) <= cert.delta + 1;
  std::size_t expect = cert.n - cert.s_h.size();
  for (std::size_t i = 0; i < cert.trace.size(); ++i) {
    const auto& st = cert.trace[i];
    if (st.i != i || st.a_size != expect || st.removed < 1 || st.removed > expect) {
      c.loop = false;
      break;
    }
    expect -= st.removed;
  }
  if (expect != cert.c.size()) c.loop = false;
  return c;
}

// One randomized instance: S is a seeded greedy F-independent set, thinned
// at random when that keeps ex_fn(|S|) positive; d is drawn from
// [1, 5] * log n / ex_fn(|S|) so the hypothesis holds; r is uniform on [0, n];
// a quarter of the instances use a random tie-break order.
struct ContainerInstance {
  VertexSet s;
  ContainerParams params;
};

inline ContainerInstance random_container_instance(const Graph& g, const Pattern& p, const ExFunction& ex_fn,
                                                   std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw InvalidArgument("container instances need n >= 2");
  SplitMix64 rng(seed);
  ContainerInstance inst{max_pattern_free_greedy(g, p, rng.next()), {}};
  const double keep = 0.5 + 0.5 * rng.uniform();
  VertexSet thin(n);
  inst.s.for_each([&](Vertex v) {
    if (rng.bernoulli(keep)) thin.insert(v);
  });
  if (ex_fn(thin.size()) > 0) inst.s = thin;
  const double ex = ex_fn(inst.s.size());
  if (!(ex > 0)) throw InvalidArgument("ex_fn vanishes on the greedy set; no admissible d exists");
  inst.params.ex_fn = ex_fn;
  inst.params.d = std::log(static_cast<double>(n)) / ex * (1 + 4 * rng.uniform());
  inst.params.r = static_cast<double>(rng.below(n + 1));
  if (rng.below(4) == 0) {
    const auto perm = random_permutation(n, rng);
    inst.params.order.assign(perm.begin(), perm.end());
  }
  return inst;
}

struct ContainerTrial {
  std::uint64_t seed = 0;
  std::size_t s = 0;
  std::size_t k = 0;
  ContainerCheck check;
  bool reconstructed = false;  // replay from (S_h, T, |S|) gave the same C
  std::string error;           // non-empty if the algorithm threw
  bool passed() const noexcept { return error.empty() && check.passed() && reconstructed; }
};

struct ContainerBatchReport {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t reconstructed = 0;
  std::vector<ContainerTrial> failures;  // in seed order

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["trials"] = trials;
    j["passed"] = passed;
    j["reconstructed"] = reconstructed;
    auto f = nlohmann::ordered_json::array();
    for (const auto& t : failures)
      f.push_back({{"seed", t.seed}, {"failed", t.error.empty() ? t.check.failures() : t.error},
                   {"reconstructed", t.reconstructed}});
    j["failures"] = std::move(f);
    return j;
  }
};

// Trial i uses derive_seed(seed, i); results do not depend on `threads`.
inline ContainerBatchReport batch_verify_containers(const Graph& g, const Pattern& p, std::size_t trials,
                                                    std::uint64_t seed, std::size_t threads = 1) {
  const auto ex_fn = admissible_ex(p);
  auto results = parallel_map<ContainerTrial>(trials, threads, [&](std::size_t i) {
    ContainerTrial t;
    t.seed = derive_seed(seed, i);
    try {
      const auto inst = random_container_instance(g, p, ex_fn, t.seed);
      const auto cert = compute_container(g, inst.s, p, inst.params);
      t.s = cert.s;
      t.k = cert.k;
      t.check = check_container(cert, inst.s);
      t.reconstructed = reconstruct_container(g, cert.s_h, cert.t, cert.s, inst.params) == cert.c;
    } catch (const Error& e) {
      t.error = e.what();
    }
    return t;
  });
  ContainerBatchReport rep;
  rep.trials = trials;
  for (auto& t : results) {
    rep.passed += t.passed();
    rep.reconstructed += t.reconstructed;
    if (!t.passed()) rep.failures.push_back(std::move(t));
  }
  return rep;
}

// t = floor(40 sqrt(ex(s, F) log n / d)): bounds both |S_h| and |T|.
inline std::uint64_t fingerprint_size_bound(double ex, std::uint64_t n, double d) {
  if (!(d > 0) || ex < 0 || n < 2) throw InvalidArgument("fingerprint_size_bound needs d > 0, ex >= 0, n >= 2");
  return static_cast<std::uint64_t>(std::floor(40 * std::sqrt(ex * std::log(static_cast<double>(n)) / d)));
}

struct FingerprintCountBound {
  std::optional<double> log_binomial;  // log((t+1)^2 n^{2t} C(floor(gamma n^theta), s)); empty if s > gamma n^theta
  double log_relaxed = 0;              // log(n^{4t} (e gamma n^theta / s)^s)
};

// Natural-log bounds on the number of F-independent s-sets.  r only enters
// through gamma n^theta and is not a separate argument.
inline FingerprintCountBound fingerprint_count_bound(std::uint64_t n, std::uint64_t t, std::uint64_t s, double gamma,
                                                     double theta) {
  if (n < 1 || s < 1 || !(gamma > 0) || !(theta > 0))
    throw InvalidArgument("fingerprint_count_bound needs n, s >= 1 and gamma, theta > 0");
  const double ln = std::log(static_cast<double>(n));
  const double td = static_cast<double>(t), sd = static_cast<double>(s);
  const double cap = gamma * std::pow(static_cast<double>(n), theta);
  FingerprintCountBound b;
  b.log_relaxed = 4 * td * ln + sd * (1 + std::log(cap / sd));
  const double big = std::floor(cap * (1 + 1e-12));
  if (sd <= big) {
    const double log_choose = std::lgamma(big + 1) - std::lgamma(sd + 1) - std::lgamma(big - sd + 1);
    b.log_binomial = 2 * std::log1p(td) + 2 * td * ln + log_choose;
  }
  return b;
}

// ---------------------------------------------------------------------------
// Hypergraph of pattern copies.

inline constexpr std::uint64_t kDefaultHyperedgeBudget = 2'000'000;

struct HypergraphStats {
  std::size_t v = 0;
  std::size_t e = 0;
  std::size_t s = 0;
  std::vector<std::uint64_t> delta;      // delta[l-1] = Delta_l
  std::vector<double> bound;             // lambda p^{l-1} e / v
  double p = 0, lambda = 0;
  bool condition = false;                // Delta_l <= bound[l-1] for all l
  std::vector<std::vector<Vertex>> hyperedges;

  nlohmann::ordered_json to_json(bool with_edges = false) const {
    nlohmann::ordered_json j;
    j["v"] = v;
    j["e"] = e;
    j["s"] = s;
    j["delta"] = delta;
    j["bound"] = bound;
    j["p"] = p;
    j["lambda"] = lambda;
    j["condition"] = condition;
    if (with_edges) j["hyperedges"] = hyperedges;
    return j;
  }
};

// Maximum l-degree of an s-uniform hypergraph given by sorted hyperedges.
inline std::vector<std::uint64_t> max_l_degrees(const std::vector<std::vector<Vertex>>& edges, std::size_t s) {
  std::vector<std::uint64_t> out(s, 0);
  std::vector<std::vector<Vertex>> keys;
  for (std::size_t l = 1; l <= s; ++l) {
    keys.clear();
    for (const auto& e : edges) {
      // Every l-subset of e, via a bitmask of length s.
      std::vector<bool> pick(s, false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(l), true);
      do {
        std::vector<Vertex> key;
        key.reserve(l);
        for (std::size_t k = 0; k < s; ++k)
          if (pick[k]) key.push_back(e[k]);
        keys.push_back(std::move(key));
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::sort(keys.begin(), keys.end());
    std::uint64_t run = 0;
    for (std::size_t k = 0; k < keys.size(); ++k) {
      run = (k > 0 && keys[k] == keys[k - 1]) ? run + 1 : 1;
      out[l - 1] = std::max(out[l - 1], run);
    }
  }
  return out;
}

// Enumerates every copy of the complete multipartite pattern P in H and
// evaluates the codegree condition Delta_l <= lambda p^{l-1} e / v.
inline HypergraphStats hypergraph_stats(const Graph& h, const Pattern& p, double prob, double lambda,
                                        std::uint64_t budget = kDefaultHyperedgeBudget) {
  if (p.kind() != Pattern::Kind::clique && p.kind() != Pattern::Kind::complete_multipartite)
    throw InvalidArgument("hypergraph_stats needs a complete multipartite pattern");
  if (!(prob > 0) || !(lambda > 0)) throw InvalidArgument("hypergraph_stats needs p > 0 and lambda > 0");
  HypergraphStats st;
  st.v = h.vertex_count();
  st.s = p.vertex_count();
  st.p = prob;
  st.lambda = lambda;
  st.hyperedges = PatternMatcher(p).copies(h, budget);
  st.e = st.hyperedges.size();
  st.delta = max_l_degrees(st.hyperedges, st.s);
  if (st.e >= 1) {
    for (std::size_t l = 1; l < st.s; ++l)
      if (st.delta[l] > st.delta[l - 1]) throw InvariantViolation("l-degrees are not nonincreasing");
    if (st.delta[st.s - 1] != 1) throw InvariantViolation("Delta_s differs from 1 for distinct hyperedges");
  }
  st.condition = true;
  for (std::size_t l = 1; l <= st.s; ++l) {
    const double b = st.v ? lambda * std::pow(prob, static_cast<double>(l - 1)) * static_cast<double>(st.e) /
                                static_cast<double>(st.v)
                          : 0.0;
    st.bound.push_back(b);
    if (static_cast<double>(st.delta[l - 1]) > b) st.condition = false;
  }
  return st;
}

// ---------------------------------------------------------------------------
// Goodness of a partition on one U.  All logarithms here are base 2.

enum class GoodnessVerdict { pass, fail, vacuous };

inline std::string to_string(GoodnessVerdict v) {
  switch (v) {
    case GoodnessVerdict::pass: return "pass";
    case GoodnessVerdict::fail: return "fail";
    case GoodnessVerdict::vacuous: return "below-threshold (vacuous)";
  }
  return {};
}

struct GoodnessResult {
  GoodnessVerdict verdict = GoodnessVerdict::vacuous;
  std::size_t u_size = 0;
  double threshold = 0;      // 500 r^2 q^2
  double gamma = 0;          // best candidate
  std::size_t witness_count = 0;
  double required = 0;       // |U| q / (8 log2(q) gamma)
  std::size_t candidates = 0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["verdict"] = to_string(verdict);
    j["u_size"] = u_size;
    j["threshold"] = threshold;
    j["gamma"] = gamma;
    j["witness_count"] = witness_count;
    j["required"] = required;
    j["candidates"] = candidates;
    return j;
  }
};

// For a given gamma, y qualifies when gamma/(10r) <= |S_i(y) n U| <= gamma for
// every part i.  The count only changes at gamma = max_i |S_i(y) n U| (y
// enters) and gamma = 10 r min_i |S_i(y) n U| (y leaves), while the required
// count falls like 1/gamma, so the best ratio is attained at one of those
// values or at the floor |U|/q^2.
inline GoodnessResult goodness_check(const BipartiteIncidence& inc, const PartitionAssignment& parts,
                                     const VertexSet& u, std::size_t r) {
  if (u.universe() != inc.x_count()) throw InvalidArgument("U must be a subset of X");
  if (parts.y_count() != inc.y_count() || parts.r() != r) throw InvalidArgument("partition does not match F and r");
  const double q = static_cast<double>(inc.q);
  if (inc.q < 2) throw InvalidArgument("goodness needs q >= 2");
  GoodnessResult res;
  res.u_size = u.size();
  res.threshold = 500.0 * static_cast<double>(r * r) * q * q;
  if (static_cast<double>(u.size()) < res.threshold) return res;

  std::vector<std::size_t> lo(inc.y_count()), hi(inc.y_count());
  std::vector<std::size_t> count(r + 1);
  for (std::uint32_t y = 0; y < inc.y_count(); ++y) {
    std::fill(count.begin(), count.end(), 0);
    const auto& nb = inc.y_neighbors(y);
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (u.contains(nb[k])) ++count[parts.part(y, k)];
    lo[y] = *std::min_element(count.begin() + 1, count.end());
    hi[y] = *std::max_element(count.begin() + 1, count.end());
  }
  const double floor_gamma = static_cast<double>(u.size()) / (q * q);
  std::vector<double> cand{floor_gamma};
  for (std::uint32_t y = 0; y < inc.y_count(); ++y) {
    cand.push_back(static_cast<double>(hi[y]));
    cand.push_back(10.0 * static_cast<double>(r * lo[y]));
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  cand.erase(std::remove_if(cand.begin(), cand.end(), [&](double g) { return g < floor_gamma || g <= 0; }),
             cand.end());
  res.candidates = cand.size();

  const double scale = static_cast<double>(u.size()) * q / (8 * std::log2(q));
  double best_ratio = -1;
  for (double g : cand) {
    std::size_t c = 0;
    for (std::uint32_t y = 0; y < inc.y_count(); ++y)
      if (g / (10.0 * static_cast<double>(r)) <= static_cast<double>(lo[y]) && static_cast<double>(hi[y]) <= g) ++c;
    const double need = scale / g;
    const double ratio = static_cast<double>(c) / need;
    if (ratio > best_ratio) {
      best_ratio = ratio;
      res.gamma = g;
      res.witness_count = c;
      res.required = need;
    }
  }
  res.verdict = best_ratio >= 1 ? GoodnessVerdict::pass : GoodnessVerdict::fail;
  return res;
}

// ---------------------------------------------------------------------------
// Size parameters for the multipartite sparsification (base-2 logarithms).

struct JSParameters {
  std::uint64_t q = 0, s = 0;
  std::uint64_t a = 0;          // ceil(q^{2-1/(s-1)} (log2 q)^3)
  double a_real = 0;            // before rounding
  double keep_p = 0;            // q^{-1/(s-1)}
  double log2_count_bound = 0;  // log2 of (q^{1/(s-1)})^a
};

inline JSParameters js_parameters(std::uint64_t q, std::uint64_t s) {
  if (s < 2) throw InvalidArgument("js_parameters needs s >= 2");
  if (q < 2) throw InvalidArgument("js_parameters needs q >= 2");
  JSParameters j;
  j.q = q;
  j.s = s;
  const double qd = static_cast<double>(q);
  const double inv = 1.0 / static_cast<double>(s - 1);
  const double lg = std::log2(qd);
  j.a_real = std::pow(qd, 2 - inv) * lg * lg * lg;
  // Absorb rounding noise so exact integers (q = 2, s = 2) stay put.
  j.a = static_cast<std::uint64_t>(std::ceil(j.a_real * (1 - 1e-14)));
  j.keep_p = std::pow(qd, -inv);
  j.log2_count_bound = static_cast<double>(j.a) * inv * lg;
  return j;
}

}  // namespace ergo
