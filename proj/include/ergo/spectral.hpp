#pragma once

// Adjacency spectra and local-density certificates.
//
// Dense path: Eigen's SelfAdjointEigenSolver (n <= 2000).
// Iterative path: power iteration on shifted matrices with deflation,
//   mu_1     : top eigenvalue of A + D I
//   mu_2     : top eigenvalue of A + D I restricted to the complement of v_1
//   mu_n     : D - (top eigenvalue of D I - A)
// where D is the maximum degree, so both shifted matrices are positive
// semidefinite.  Each eigenvalue is the Rayleigh quotient of a unit vector x
// with ||A x - mu x|| <= tol, which places mu within tol of the spectrum.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ergo/error.hpp"
#include "ergo/graph.hpp"
#include "ergo/parallel.hpp"
#include "ergo/random.hpp"
#include "json.hpp"

namespace ergo {

enum class EigenMethod { automatic, dense, iterative };

inline const char* to_string(EigenMethod m) {
  switch (m) {
    case EigenMethod::automatic: return "automatic";
    case EigenMethod::dense: return "dense";
    case EigenMethod::iterative: return "iterative";
  }
  return "";
}

inline constexpr std::size_t kMaxDenseVertices = 2000;
inline constexpr double kDenseTolerance = 1e-9;
inline constexpr double kIterativeTolerance = 1e-6;
inline constexpr std::size_t kMaxPowerIterations = 100'000;

struct ExtremeEigenvalues {
  double mu1 = 0;     // largest
  double mu2 = 0;     // second largest (with multiplicity)
  double mu_min = 0;  // smallest
  double lambda = 0;  // max(|mu2|, |mu_min|), 0 when n = 1
  EigenMethod method = EigenMethod::dense;
  double residual = 0;  // max residual over the three eigenpairs
  std::size_t iterations = 0;
};

namespace detail {

inline std::vector<std::vector<Vertex>> adjacency_lists(const Graph& g) {
  std::vector<std::vector<Vertex>> adj(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) adj[v] = g.neighbors(v).members();
  return adj;
}

inline void matvec(const std::vector<std::vector<Vertex>>& adj, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t v = 0; v < adj.size(); ++v) {
    double s = 0;
    for (Vertex u : adj[v]) s += x[u];
    y[v] = s;
  }
}

inline double dotp(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void normalise(std::vector<double>& x) {
  const double nrm = std::sqrt(dotp(x, x));
  for (auto& v : x) v /= nrm;
}

struct PowerResult {
  double value = 0;
  double residual = 0;
  std::size_t iterations = 0;
  std::vector<double> vector;
};

// Top eigenpair of (sign A + shift I), optionally orthogonal to `deflate`.
// Reports the eigenvalue of A itself (sign * (mu - shift) undone).
inline PowerResult power_method(const std::vector<std::vector<Vertex>>& adj, double sign, double shift,
                                const std::vector<std::vector<double>>& deflate, double tol, std::size_t max_iter,
                                std::uint64_t seed) {
  const std::size_t n = adj.size();
  SplitMix64 rng(seed);
  std::vector<double> x(n), ax(n), y(n);
  for (auto& v : x) v = rng.uniform() - 0.5;
  auto project = [&](std::vector<double>& z) {
    for (const auto& d : deflate) {
      const double c = dotp(d, z);
      for (std::size_t i = 0; i < n; ++i) z[i] -= c * d[i];
    }
  };
  project(x);
  normalise(x);
  PowerResult res;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    matvec(adj, x, ax);
    const double mu = dotp(x, ax);  // Rayleigh quotient of A
    double r2 = 0;
    for (std::size_t i = 0; i < n; ++i) r2 += (ax[i] - mu * x[i]) * (ax[i] - mu * x[i]);
    res.value = mu;
    res.residual = std::sqrt(r2);
    res.iterations = it;
    if (res.residual <= tol) {
      res.vector = x;
      return res;
    }
    for (std::size_t i = 0; i < n; ++i) y[i] = sign * ax[i] + shift * x[i];
    project(y);
    const double nrm = std::sqrt(dotp(y, y));
    if (nrm == 0) break;  // nothing left outside the deflated space
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / nrm;
  }
  throw ConvergenceError("power iteration stalled at residual " + std::to_string(res.residual) + " after " +
                         std::to_string(max_iter) + " iterations");
}

}  // namespace detail

inline ExtremeEigenvalues extreme_eigenvalues(const Graph& g, double tol = -1,
                                              EigenMethod method = EigenMethod::automatic,
                                              std::size_t max_iter = kMaxPowerIterations) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InvalidArgument("spectrum of the empty graph");
  if (method == EigenMethod::automatic) method = n <= kMaxDenseVertices ? EigenMethod::dense : EigenMethod::iterative;
  if (tol <= 0) tol = method == EigenMethod::dense ? kDenseTolerance : kIterativeTolerance;
  ExtremeEigenvalues out;
  out.method = method;

  if (method == EigenMethod::dense) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");
    const auto& ev = es.eigenvalues();
    const auto last = static_cast<Eigen::Index>(n - 1);
    out.mu1 = ev(last);
    out.mu_min = ev(0);
    out.mu2 = n >= 2 ? ev(last - 1) : ev(last);
    for (Eigen::Index k : {Eigen::Index{0}, last, n >= 2 ? last - 1 : last}) {
      const Eigen::VectorXd vec = es.eigenvectors().col(k);
      out.residual = std::max(out.residual, (a * vec - ev(k) * vec).norm());
    }
    if (out.residual > tol)
      throw ConvergenceError("dense eigensolver residual " + std::to_string(out.residual) + " exceeds tolerance");
  } else {
    const auto adj = detail::adjacency_lists(g);
    const double shift = static_cast<double>(g.max_degree());
    auto top = detail::power_method(adj, +1.0, shift, {}, tol, max_iter, 0x5eed0001);
    auto bottom = detail::power_method(adj, -1.0, shift, {}, tol, max_iter, 0x5eed0002);
    out.mu1 = top.value;
    out.mu_min = bottom.value;
    out.iterations = top.iterations + bottom.iterations;
    out.residual = std::max(top.residual, bottom.residual);
    if (n >= 2) {
      auto second = detail::power_method(adj, +1.0, shift, {top.vector}, tol, max_iter, 0x5eed0003);
      out.mu2 = second.value;
      out.iterations += second.iterations;
      out.residual = std::max(out.residual, second.residual);
    } else {
      out.mu2 = out.mu1;
    }
  }
  out.lambda = n >= 2 ? std::max(std::abs(out.mu2), std::abs(out.mu_min)) : 0.0;
  return out;
}

// (n, d, lambda) data.  For irregular graphs mu_1 stands in for d.
struct SpectralCertificate {
  std::size_t n = 0;
  std::size_t max_degree = 0;
  bool regular = false;
  double d = 0;  // degree if regular, else mu_1
  double mu1 = 0;
  double lambda = 0;
  double tolerance = 0;
  double residual = 0;
  EigenMethod method = EigenMethod::dense;

  nlohmann::ordered_json to_json() const {
    return {{"n", n},       {"max_degree", max_degree}, {"regular", regular},     {"d", d},
            {"mu1", mu1},   {"lambda", lambda},         {"tolerance", tolerance}, {"residual", residual},
            {"method", to_string(method)}};
  }
};

inline SpectralCertificate certify_spectrum(const Graph& g, double tol = -1,
                                            EigenMethod method = EigenMethod::automatic) {
  const auto ev = extreme_eigenvalues(g, tol, method);
  SpectralCertificate c;
  c.n = g.vertex_count();
  c.max_degree = g.max_degree();
  c.regular = g.is_regular();
  c.mu1 = ev.mu1;
  c.d = c.regular ? static_cast<double>(c.max_degree) : ev.mu1;
  c.lambda = ev.lambda;
  c.method = ev.method;
  c.tolerance = tol > 0 ? tol : (ev.method == EigenMethod::dense ? kDenseTolerance : kIterativeTolerance);
  c.residual = ev.residual;
  const double slack = c.tolerance + 1e-12 * std::max(1.0, c.d);
  if (c.lambda < 0 || c.lambda > c.d + slack)
    throw InvariantViolation("lambda " + std::to_string(c.lambda) + " outside [0, d]");
  if (c.regular && std::abs(c.mu1 - c.d) > slack)
    throw InvariantViolation("top eigenvalue of a regular graph differs from its degree");
  return c;
}

// Expander mixing lemma: every a-set spans at least d a^2 / (2n) - lambda a / 2 edges.
inline double eml_edge_lower_bound(double n, double d, double lambda, double a) {
  if (!(n > 0)) throw InvalidArgument("eml bound needs n > 0");
  if (a < 0 || a > n) throw InvalidArgument("eml bound needs 0 <= a <= n");
  if (lambda < 0 || lambda > d) throw InvalidArgument("eml bound needs 0 <= lambda <= d");
  return std::max(0.0, d * a * a / (2 * n) - lambda * a / 2);
}

// ---------------------------------------------------------------------------
// Local density: e(G[A]) >= |A|^2 delta n^{-beta} for every A with |A| > gamma n^theta.

enum class DensityMode { exhaustive, sampled };

inline constexpr std::size_t kMaxExhaustiveDensityVertices = 22;
inline constexpr std::size_t kMaxReportedWitnesses = 16;

struct DensityReport {
  double delta = 0, beta = 0, theta = 0, gamma = 0;
  std::size_t n = 0;
  std::size_t min_size = 0;  // smallest |A| checked
  DensityMode mode = DensityMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;  // sets checked
  std::uint64_t violation_count = 0;
  std::vector<std::vector<Vertex>> violations;  // first kMaxReportedWitnesses, in check order
  double min_ratio = 0;  // min over checked A of e(A) / (|A|^2 n^{-beta}); +inf if none

  bool passed() const { return violation_count == 0; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["delta"] = delta;
    j["beta"] = beta;
    j["theta"] = theta;
    j["gamma"] = gamma;
    j["n"] = n;
    j["min_size"] = min_size;
    j["verified"] = mode == DensityMode::exhaustive ? "exhaustive" : "sampled";
    j["seed"] = seed;
    j["samples"] = samples;
    j["violation_count"] = violation_count;
    j["violations"] = violations;
    j["min_ratio"] = std::isfinite(min_ratio) ? nlohmann::ordered_json(min_ratio) : nlohmann::ordered_json(nullptr);
    j["passed"] = passed();
    return j;
  }
};

namespace detail {

struct DensityChunk {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::vector<std::vector<Vertex>> witnesses;
  double min_ratio = INFINITY;
};

inline void merge_chunks(DensityReport& rep, const std::vector<DensityChunk>& chunks) {
  rep.min_ratio = INFINITY;
  for (const auto& c : chunks) {
    rep.samples += c.checked;
    rep.violation_count += c.violations;
    rep.min_ratio = std::min(rep.min_ratio, c.min_ratio);
    for (const auto& w : c.witnesses)
      if (rep.violations.size() < kMaxReportedWitnesses) rep.violations.push_back(w);
  }
}

}  // namespace detail

// Sets of size < 2 are never checked: a single vertex spans no edge, so any
// delta > 0 would fail there regardless of the graph.
//
// Exhaustive mode walks all 2^n subsets in Gray-code order (chunked on the top
// bits).  Sampled mode checks, per size in range, one set obtained by peeling
// maximum-degree vertices (a sparse adversarial candidate), then `samples`
// uniformly random sets of uniformly random admissible size.
inline DensityReport verify_local_density(const Graph& g, double delta, double beta, double theta, double gamma,
                                          DensityMode mode, std::uint64_t samples, std::uint64_t seed,
                                          std::size_t threads = 1) {
  const std::size_t n = g.vertex_count();
  if (mode == DensityMode::exhaustive && n > kMaxExhaustiveDensityVertices)
    throw InvalidArgument("exhaustive density check needs n <= 22, got " + std::to_string(n));
  if (!(delta >= 0) || !std::isfinite(beta) || !std::isfinite(theta) || !(gamma >= 0))
    throw InvalidArgument("density parameters must be finite with delta, gamma >= 0");
  DensityReport rep;
  rep.delta = delta;
  rep.beta = beta;
  rep.theta = theta;
  rep.gamma = gamma;
  rep.n = n;
  rep.mode = mode;
  rep.seed = seed;
  const double nd = static_cast<double>(n);
  const double threshold = gamma * std::pow(nd, theta);
  const double scale = n ? std::pow(nd, -beta) : 1.0;
  std::size_t min_size = threshold < 0 ? 0 : static_cast<std::size_t>(std::floor(threshold)) + 1;
  min_size = std::max<std::size_t>(min_size, 2);
  rep.min_size = min_size;
  if (min_size > n) {
    rep.min_ratio = INFINITY;
    return rep;
  }

  auto judge = [&](detail::DensityChunk& c, std::size_t size, std::size_t edges, auto&& members) {
    ++c.checked;
    const double need = static_cast<double>(size) * static_cast<double>(size) * scale;
    c.min_ratio = std::min(c.min_ratio, static_cast<double>(edges) / need);
    if (static_cast<double>(edges) < need * delta) {
      ++c.violations;
      if (c.witnesses.size() < kMaxReportedWitnesses) c.witnesses.push_back(members());
    }
  };

  if (mode == DensityMode::exhaustive) {
    std::vector<std::uint32_t> adj(n, 0);
    for (Vertex v = 0; v < n; ++v) g.neighbors(v).for_each([&](Vertex u) { adj[v] |= 1u << u; });
    const std::size_t high = n > 10 ? 6 : 0;  // 2^high chunks
    const std::size_t low = n - high;
    auto chunks = parallel_map<detail::DensityChunk>(std::size_t{1} << high, threads, [&](std::size_t c) {
      detail::DensityChunk out;
      std::uint32_t set = static_cast<std::uint32_t>(c) << low;
      std::size_t edges = 0;
      for (std::size_t v = low; v < n; ++v)
        if (set >> v & 1u) edges += static_cast<std::size_t>(std::popcount(adj[v] & set));
      edges /= 2;
      auto visit = [&] {
        const auto size = static_cast<std::size_t>(std::popcount(set));
        if (size >= min_size)
          judge(out, size, edges, [&] {
            std::vector<Vertex> m;
            for (Vertex v = 0; v < n; ++v)
              if (set >> v & 1u) m.push_back(v);
            return m;
          });
      };
      visit();
      for (std::uint64_t k = 1; k < (std::uint64_t{1} << low); ++k) {
        const auto v = static_cast<std::size_t>(std::countr_zero(k));  // Gray code flip
        const std::uint32_t bit = 1u << v;
        const auto inside = static_cast<std::size_t>(std::popcount(adj[v] & set));
        if (set & bit) {
          set &= ~bit;
          edges -= inside;
        } else {
          set |= bit;
          edges += inside;
        }
        visit();
      }
      return out;
    });
    detail::merge_chunks(rep, chunks);
    return rep;
  }

  // Sampled.
  const auto adjl = detail::adjacency_lists(g);
  std::vector<detail::DensityChunk> chunks;
  {
    // Peeling sequence: repeatedly drop a maximum-degree vertex (lowest index on ties).
    detail::DensityChunk peel;
    VertexSet a = VertexSet::full(n);
    std::vector<std::size_t> deg(n);
    for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::size_t edges = g.edge_count();
    for (std::size_t size = n; size >= min_size; --size) {
      judge(peel, size, edges, [&] { return a.members(); });
      if (size == min_size) break;
      Vertex best = 0;
      std::size_t best_deg = 0;
      bool found = false;
      a.for_each([&](Vertex v) {
        if (!found || deg[v] > best_deg) {
          best = v;
          best_deg = deg[v];
          found = true;
        }
      });
      a.erase(best);
      edges -= best_deg;
      for (Vertex u : adjl[best])
        if (a.contains(u)) --deg[u];
    }
    chunks.push_back(std::move(peel));
  }
  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t nchunks = (samples + kChunk - 1) / kChunk;
  auto random_chunks = parallel_map<detail::DensityChunk>(nchunks, threads, [&](std::size_t c) {
    detail::DensityChunk out;
    SplitMix64 rng(derive_seed(seed, c));
    std::vector<Vertex> perm(n);
    std::vector<char> in(n);
    const std::uint64_t count = std::min<std::uint64_t>(kChunk, samples - c * kChunk);
    for (std::uint64_t s = 0; s < count; ++s) {
      const std::size_t size = min_size + static_cast<std::size_t>(rng.below(n - min_size + 1));
      std::iota(perm.begin(), perm.end(), Vertex{0});
      for (std::size_t i = 0; i < size; ++i) std::swap(perm[i], perm[i + rng.below(n - i)]);
      std::fill(in.begin(), in.end(), 0);
      for (std::size_t i = 0; i < size; ++i) in[perm[i]] = 1;
      std::size_t twice = 0;
      for (std::size_t i = 0; i < size; ++i)
        for (Vertex u : adjl[perm[i]]) twice += in[u];
      judge(out, size, twice / 2, [&] {
        std::vector<Vertex> m(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(size));
        std::sort(m.begin(), m.end());
        return m;
      });
    }
    return out;
  });
  chunks.insert(chunks.end(), random_chunks.begin(), random_chunks.end());
  detail::merge_chunks(rep, chunks);
  return rep;
}

}  // namespace ergo
