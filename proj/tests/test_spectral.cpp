#include <gtest/gtest.h>

#include <cmath>

#include "ergo/constructions.hpp"
#include "ergo/spectral.hpp"

using namespace ergo;

namespace {

// Edges inside every subset, by mask, computed with a plain double loop.
std::vector<std::uint32_t> subset_edges(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> e(std::size_t{1} << n, 0);
  for (std::uint32_t m = 0; m < e.size(); ++m)
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if ((m >> u & 1u) && (m >> v & 1u) && g.adjacent(u, v)) ++e[m];
  return e;
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed) { return gnp(n, p, seed); }

}  // namespace

TEST(Spectrum, CompleteGraphs) {
  for (std::size_t n : {2u, 3u, 5u, 9u}) {
    for (auto method : {EigenMethod::dense, EigenMethod::iterative}) {
      const auto ev = extreme_eigenvalues(complete_graph(n), -1, method);
      EXPECT_NEAR(ev.mu1, n - 1.0, 1e-9) << n << to_string(method);
      EXPECT_NEAR(ev.lambda, 1.0, 1e-9) << n << to_string(method);
      EXPECT_NEAR(ev.mu_min, -1.0, 1e-9);
    }
  }
}

TEST(Spectrum, FourCycle) {
  for (auto method : {EigenMethod::dense, EigenMethod::iterative}) {
    const auto ev = extreme_eigenvalues(cycle_graph(4), -1, method);
    EXPECT_NEAR(ev.mu1, 2.0, 1e-9);
    EXPECT_NEAR(ev.mu2, 0.0, 1e-9);
    EXPECT_NEAR(ev.mu_min, -2.0, 1e-9);
    EXPECT_NEAR(ev.lambda, 2.0, 1e-9);
  }
}

TEST(Spectrum, CycleFormula) {
  for (std::size_t n = 3; n <= 12; ++n) {
    const auto ev = extreme_eigenvalues(cycle_graph(n));
    double mu2 = -3, mn = 3;
    for (std::size_t k = 1; k < n; ++k) {
      const double v = 2 * std::cos(2 * M_PI * static_cast<double>(k) / static_cast<double>(n));
      mu2 = std::max(mu2, v);
      mn = std::min(mn, v);
    }
    EXPECT_NEAR(ev.mu2, mu2, 1e-9) << n;
    EXPECT_NEAR(ev.mu_min, mn, 1e-9) << n;
  }
}

TEST(Spectrum, Catalog) {
  struct Case {
    const char* name;
    double mu1, mu2, mu_min, lambda;
  };
  for (const Case& c : {Case{"petersen", 3, 1, -2, 2}, Case{"clebsch", 5, 1, -3, 3},
                        Case{"hoffman_singleton", 7, 2, -3, 3}}) {
    const auto g = named_graph(c.name);
    const auto dense = extreme_eigenvalues(g, -1, EigenMethod::dense);
    EXPECT_NEAR(dense.mu1, c.mu1, 1e-9) << c.name;
    EXPECT_NEAR(dense.mu2, c.mu2, 1e-9) << c.name;
    EXPECT_NEAR(dense.mu_min, c.mu_min, 1e-9) << c.name;
    EXPECT_NEAR(dense.lambda, c.lambda, 1e-9) << c.name;
    const auto it = extreme_eigenvalues(g, -1, EigenMethod::iterative);
    EXPECT_NEAR(it.mu1, dense.mu1, 1e-9) << c.name;
    EXPECT_NEAR(it.mu2, dense.mu2, 1e-9) << c.name;
    EXPECT_NEAR(it.mu_min, dense.mu_min, 1e-9) << c.name;
    EXPECT_NEAR(it.lambda, dense.lambda, 1e-9) << c.name;
    EXPECT_LE(it.residual, kIterativeTolerance);
    EXPECT_LE(dense.residual, kDenseTolerance);
  }
}

TEST(Spectrum, IterativeAgreesOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_graph(40, 0.2, seed);
    const auto dense = extreme_eigenvalues(g, -1, EigenMethod::dense);
    const auto it = extreme_eigenvalues(g, 1e-8, EigenMethod::iterative);
    EXPECT_NEAR(it.mu1, dense.mu1, 1e-8) << seed;
    EXPECT_NEAR(it.mu_min, dense.mu_min, 1e-8) << seed;
    EXPECT_NEAR(it.mu2, dense.mu2, 1e-6) << seed;
  }
}

TEST(Spectrum, NonConvergenceIsLoud) {
  EXPECT_THROW(extreme_eigenvalues(named_graph("petersen"), 1e-12, EigenMethod::iterative, 2), ConvergenceError);
  EXPECT_THROW(extreme_eigenvalues(Graph(0)), InvalidArgument);
}

TEST(Spectrum, TrivialGraphs) {
  const auto one = extreme_eigenvalues(Graph(1));
  EXPECT_EQ(one.lambda, 0.0);
  const auto e = extreme_eigenvalues(empty_graph(5), -1, EigenMethod::iterative);
  EXPECT_NEAR(e.mu1, 0.0, 1e-12);
  EXPECT_NEAR(e.lambda, 0.0, 1e-12);
}

TEST(Certificate, RegularAndIrregular) {
  const auto c = certify_spectrum(named_graph("clebsch"));
  EXPECT_TRUE(c.regular);
  EXPECT_EQ(c.d, 5.0);
  EXPECT_NEAR(c.lambda, 3.0, 1e-9);
  EXPECT_EQ(c.to_json()["method"], "dense");
  Graph star(5);
  for (Vertex v = 1; v < 5; ++v) star.add_edge(0, v);
  const auto s = certify_spectrum(star);
  EXPECT_FALSE(s.regular);
  EXPECT_NEAR(s.d, 2.0, 1e-9);  // mu_1 of K_{1,4}
  EXPECT_NEAR(s.lambda, 2.0, 1e-9);
}

TEST(Eml, Examples) {
  EXPECT_DOUBLE_EQ(eml_edge_lower_bound(10, 3, 0, 4), 3.0 * 16 / 20);
  EXPECT_DOUBLE_EQ(eml_edge_lower_bound(10, 3, 2, 10), 5.0);
  EXPECT_DOUBLE_EQ(eml_edge_lower_bound(10, 3, 2, 0), 0.0);
  EXPECT_DOUBLE_EQ(eml_edge_lower_bound(10, 3, 2, 2), 0.0);  // clamped
  EXPECT_GE(named_graph("petersen").edge_count(), 5u);
  EXPECT_THROW(eml_edge_lower_bound(10, 3, 4, 2), InvalidArgument);
  EXPECT_THROW(eml_edge_lower_bound(10, 3, 2, 11), InvalidArgument);
  EXPECT_THROW(eml_edge_lower_bound(10, 3, -1, 2), InvalidArgument);
}

TEST(Eml, HoldsOnAllSubsets) {
  for (const char* name : {"petersen", "clebsch"}) {
    const auto g = named_graph(name);
    const auto ev = extreme_eigenvalues(g);
    const double n = static_cast<double>(g.vertex_count()), d = static_cast<double>(g.max_degree());
    const auto e = subset_edges(g);
    for (std::uint32_t m = 0; m < e.size(); ++m) {
      const double a = std::popcount(m);
      ASSERT_GE(e[m] + 1e-9, eml_edge_lower_bound(n, d, ev.lambda, a)) << name << " " << m;
    }
  }
}

TEST(LocalDensity, EmptyGraphFails) {
  const auto rep = verify_local_density(empty_graph(8), 0.01, 0, 0, 3, DensityMode::exhaustive, 0, 1);
  EXPECT_FALSE(rep.passed());
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_GT(rep.violations.front().size(), 3u);
  EXPECT_EQ(rep.min_ratio, 0.0);
  const auto s = verify_local_density(empty_graph(30), 0.01, 0, 0, 3, DensityMode::sampled, 100, 1);
  EXPECT_FALSE(s.passed());
}

TEST(LocalDensity, CliquesPass) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto rep = verify_local_density(complete_graph(n), 0.25, 0, 0, 0, DensityMode::exhaustive, 0, 1);
    EXPECT_TRUE(rep.passed()) << n;
    EXPECT_EQ(rep.min_size, 2u);
    EXPECT_EQ(rep.samples, (std::uint64_t{1} << n) - 1 - n);
  }
}

TEST(LocalDensity, PetersenFromEmlBound) {
  // At a = 8: 3 * 64 / 20 - 2 * 8 / 2 = 1.6 = 0.025 * 64; the ratio bound(a) / a^2
  // increases in a, so delta = 0.025 holds for all |A| > 7.
  const double delta = eml_edge_lower_bound(10, 3, 2, 8) / 64;
  EXPECT_NEAR(delta, 0.025, 1e-15);
  const auto rep = verify_local_density(named_graph("petersen"), delta, 0, 0, 7, DensityMode::exhaustive, 0, 1);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.min_size, 8u);
  EXPECT_EQ(rep.samples, 45u + 10u + 1u);
}

TEST(LocalDensity, MatchesNaiveRecount) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 6 + seed % 9;  // 6..14
    const auto g = random_graph(n, 0.35, seed);
    const double delta = 0.15, beta = 0.2, theta = 0.5, gamma = 1.0;
    const auto rep = verify_local_density(g, delta, beta, theta, gamma, DensityMode::exhaustive, 0, seed, 3);
    const double thr = gamma * std::pow(static_cast<double>(n), theta);
    const double scale = std::pow(static_cast<double>(n), -beta);
    const auto e = subset_edges(g);
    std::uint64_t checked = 0, bad = 0;
    double min_ratio = INFINITY;
    for (std::uint32_t m = 0; m < e.size(); ++m) {
      const double a = std::popcount(m);
      if (a <= thr || a < 2) continue;
      ++checked;
      min_ratio = std::min(min_ratio, e[m] / (a * a * scale));
      if (e[m] < a * a * delta * scale) ++bad;
    }
    EXPECT_EQ(rep.samples, checked) << seed;
    EXPECT_EQ(rep.violation_count, bad) << seed;
    EXPECT_DOUBLE_EQ(rep.min_ratio, min_ratio) << seed;
    for (const auto& w : rep.violations) {
      std::uint32_t m = 0;
      for (Vertex v : w) m |= 1u << v;
      EXPECT_LT(e[m], w.size() * w.size() * delta * scale);
    }
  }
}

TEST(LocalDensity, SampledFindsPlantedSparseSet) {
  Graph g = complete_graph(40);
  Graph h(40);
  for (const auto& [u, v] : g.edges())
    if (u >= 12 || v >= 12) h.add_edge(u, v);  // {0..11} independent
  const auto rep = verify_local_density(h, 0.1, 0, 0, 5, DensityMode::sampled, 200, 4);
  EXPECT_FALSE(rep.passed());
  ASSERT_FALSE(rep.violations.empty());
  const auto& w = rep.violations.front();
  EXPECT_LT(edges_within(h, VertexSet::of(40, w)), 0.1 * w.size() * w.size());
}

TEST(LocalDensity, ThreadCountDoesNotChangeReport) {
  const auto g = random_graph(18, 0.3, 77);
  for (auto mode : {DensityMode::exhaustive, DensityMode::sampled}) {
    const auto a = verify_local_density(g, 0.2, 0, 0.5, 1, mode, 5000, 9, 1).to_json().dump();
    const auto b = verify_local_density(g, 0.2, 0, 0.5, 1, mode, 5000, 9, 8).to_json().dump();
    EXPECT_EQ(a, b);
  }
}

TEST(LocalDensity, Guards) {
  EXPECT_THROW(verify_local_density(empty_graph(23), 0.1, 0, 0, 0, DensityMode::exhaustive, 0, 0), InvalidArgument);
  EXPECT_THROW(verify_local_density(empty_graph(5), -1, 0, 0, 0, DensityMode::exhaustive, 0, 0), InvalidArgument);
  // Threshold above n: nothing to check.
  const auto rep = verify_local_density(empty_graph(5), 0.1, 0, 0, 10, DensityMode::exhaustive, 0, 0);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.samples, 0u);
}
