#pragma once

// Graph constructions and parameter calculators.

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ergo/error.hpp"
#include "ergo/field.hpp"
#include "ergo/graph.hpp"
#include "ergo/graph_io.hpp"
#include "ergo/random.hpp"
#include "ergo/rational.hpp"
#include "ergo/unital.hpp"

namespace ergo {

// ---------------------------------------------------------------------------
// r-partite overlay on the X side of a bipartite incidence.

// part(y, k) in [1, r] is the part of the k-th neighbour (ascending) of y.
class PartitionAssignment {
 public:
  PartitionAssignment() = default;
  PartitionAssignment(const BipartiteIncidence& inc, std::size_t r, std::uint64_t seed) : r_(r), seed_(seed) {
    parts_.resize(inc.y_count());
    for (std::uint32_t y = 0; y < inc.y_count(); ++y) parts_[y].assign(inc.y_degree(y), 0);
  }

  std::size_t r() const noexcept { return r_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t y_count() const noexcept { return parts_.size(); }

  std::uint32_t part(std::uint32_t y, std::size_t k) const { return parts_.at(y).at(k); }
  void set_part(std::uint32_t y, std::size_t k, std::uint32_t part) {
    if (part < 1 || part > r_) throw InvalidArgument("part index out of [1, r]");
    parts_.at(y).at(k) = part;
  }
  const std::vector<std::uint32_t>& parts_of(std::uint32_t y) const { return parts_.at(y); }

  // Part of x inside N(y); throws if x is not a neighbour of y.
  std::uint32_t part_of(const BipartiteIncidence& inc, std::uint32_t y, std::uint32_t x) const {
    const auto& nb = inc.y_neighbors(y);
    auto it = std::lower_bound(nb.begin(), nb.end(), x);
    if (it == nb.end() || *it != x) throw InvalidArgument("x is not a neighbour of y");
    return parts_[y][static_cast<std::size_t>(it - nb.begin())];
  }

  // "y x part" triples sorted by (y, x), one per line, no final newline.
  std::string to_text(const BipartiteIncidence& inc) const {
    std::string out;
    for (std::uint32_t y = 0; y < parts_.size(); ++y) {
      const auto& nb = inc.y_neighbors(y);
      for (std::size_t k = 0; k < nb.size(); ++k) {
        if (!out.empty()) out += '\n';
        out += std::to_string(y) + ' ' + std::to_string(nb[k]) + ' ' + std::to_string(parts_[y][k]);
      }
    }
    return out;
  }

 private:
  std::size_t r_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::vector<std::uint32_t>> parts_;
};

struct PartiteOverlay {
  Graph graph;
  PartitionAssignment parts;
};

inline constexpr std::size_t kMaxOverlayVertices = 30'000;

// Parts are i.i.d. uniform on [1, r], drawn from one SplitMix64 stream in
// (y, neighbour) order.
inline PartitionAssignment random_partition(const BipartiteIncidence& inc, std::size_t r, std::uint64_t seed) {
  if (r < 2) throw InvalidArgument("partition needs r >= 2 parts");
  PartitionAssignment parts(inc, r, seed);
  SplitMix64 rng(seed);
  for (std::uint32_t y = 0; y < inc.y_count(); ++y)
    for (std::size_t k = 0; k < inc.y_degree(y); ++k) parts.set_part(y, k, static_cast<std::uint32_t>(1 + rng.below(r)));
  return parts;
}

// Graph H on X: {x1, x2} is an edge iff some y has x1, x2 in different parts
// of its partition.
inline PartiteOverlay mv_partite_graph(const BipartiteIncidence& inc, std::size_t r, std::uint64_t seed) {
  if (r < 2) throw InvalidArgument("overlay needs r >= 2 parts");
  if (inc.x_count() > kMaxOverlayVertices)
    throw InvalidArgument("overlay on " + std::to_string(inc.x_count()) + " vertices exceeds the bitset guard of " +
                          std::to_string(kMaxOverlayVertices));
  PartiteOverlay out{Graph(inc.x_count(), "mv"), random_partition(inc, r, seed)};
  for (std::uint32_t y = 0; y < inc.y_count(); ++y) {
    const auto& nb = inc.y_neighbors(y);
    const auto& pt = out.parts.parts_of(y);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (pt[a] != pt[b]) out.graph.add_edge(nb[a], nb[b]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Named graphs.

inline Graph petersen_graph() {
  Graph g(10, "petersen");
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);            // outer cycle
    g.add_edge(i, i + 5);                  // spokes
    g.add_edge(5 + i, 5 + (i + 2) % 5);    // inner pentagram
  }
  return g;
}

// Folded 5-cube: 4-bit strings, adjacent when they differ in one bit or in all four.
inline Graph clebsch_graph() {
  Graph g(16, "clebsch");
  for (Vertex u = 0; u < 16; ++u)
    for (Vertex v = u + 1; v < 16; ++v) {
      const unsigned d = u ^ v;
      if (std::popcount(d) == 1 || d == 15) g.add_edge(u, v);
    }
  return g;
}

// Robertson's pentagons and pentagrams: P_h[j] = 5h + j, Q_i[j] = 25 + 5i + j,
// P_h[j] ~ P_h[j +- 1], Q_i[j] ~ Q_i[j +- 2], P_h[j] ~ Q_i[h i + j].
inline Graph hoffman_singleton_graph() {
  Graph g(50, "hoffman_singleton");
  auto P = [](Vertex h, Vertex j) { return 5 * h + j % 5; };
  auto Q = [](Vertex i, Vertex j) { return 25 + 5 * i + j % 5; };
  for (Vertex h = 0; h < 5; ++h)
    for (Vertex j = 0; j < 5; ++j) {
      g.add_edge(P(h, j), P(h, j + 1));
      g.add_edge(Q(h, j), Q(h, j + 2));
      for (Vertex i = 0; i < 5; ++i) g.add_edge(P(h, j), Q(i, h * i + j));
    }
  return g;
}

// petersen, clebsch, hoffman_singleton, c<n>, k<n>, empty<n>.
inline Graph named_graph(std::string_view name) {
  if (name == "petersen") return petersen_graph();
  if (name == "clebsch") return clebsch_graph();
  if (name == "hoffman_singleton") return hoffman_singleton_graph();
  auto sized = [&](std::string_view prefix, std::size_t& n) {
    if (name.substr(0, prefix.size()) != prefix || name.size() == prefix.size()) return false;
    const auto digits = name.substr(prefix.size());
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    return ec == std::errc{} && p == digits.data() + digits.size();
  };
  std::size_t n = 0;
  constexpr std::size_t kMax = 100'000;
  if (sized("empty", n) && n <= kMax) return empty_graph(n);
  if (sized("k", n) && n <= kMax) return complete_graph(n);
  if (sized("c", n) && n >= 3 && n <= kMax) return cycle_graph(n);
  throw InvalidArgument("unknown graph name \"" + std::string(name) + "\"");
}

// Erdos-Renyi G(n, p): pairs u < v in lexicographic order, one bernoulli(p) each.
inline Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("gnp: p must lie in [0, 1]");
  Graph g(n, "gnp");
  SplitMix64 rng(seed);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

// ---------------------------------------------------------------------------
// Parameters of the cited constructions.

struct AlonParameters {
  std::uint32_t ell = 0;
  std::uint64_t m = 0;  // 2^{3 ell} vertices
  std::uint64_t d = 0;  // 2^{ell-1} (2^{ell-1} - 1)
  double nu_lo = 0;     // -9 2^ell - 3 2^{ell/2} - 1/4
  double nu_hi = 0;     //  4 2^ell + 2 2^{ell/2} + 1/4
  // Sets of size >= density_size span >= |X|^2 * density_coefficient edges.
  double density_size = 0;         // 10^10 2^{2 ell}
  double density_coefficient = 0;  // 1 / (10^10 2^ell)
};

inline AlonParameters alon_parameters(std::uint32_t ell) {
  if (ell < 1) throw InvalidArgument("alon parameters need ell >= 1");
  if (ell % 3 == 0) throw InvalidArgument("ell must not be divisible by 3");
  if (3 * ell > 63) throw InvalidArgument("ell too large for 64-bit vertex counts");
  AlonParameters a;
  a.ell = ell;
  a.m = std::uint64_t{1} << (3 * ell);
  const std::uint64_t h = std::uint64_t{1} << (ell - 1);
  a.d = h * (h - 1);
  const double two_l = std::ldexp(1.0, static_cast<int>(ell));
  const double root = std::sqrt(two_l);
  a.nu_lo = -9 * two_l - 3 * root - 0.25;
  a.nu_hi = 4 * two_l + 2 * root + 0.25;
  a.density_size = 1e10 * two_l * two_l;
  a.density_coefficient = 1.0 / (1e10 * two_l);
  return a;
}

// If q = p^k for a prime p, returns p; otherwise 0.
inline std::uint64_t prime_power_base(std::uint64_t q) {
  if (q < 2) return 0;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    while (q % p == 0) q /= p;
    return q == 1 ? p : 0;
  }
  return q;  // q itself is prime
}

struct MVParameters {
  std::uint64_t q = 0;
  std::uint64_t m = 0;          // q^2 (q^2 - q + 1)
  std::uint64_t threshold = 0;  // 2^24 q^2
  Rational density_coefficient; // 1 / (256 q)
};

inline MVParameters mv_parameters(std::uint64_t q) {
  if (prime_power_base(q) == 0) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  if (q > 30'000) throw InvalidArgument("q too large for exact 64-bit parameters");
  MVParameters p;
  p.q = q;
  p.m = q * q * (q * q - q + 1);
  p.threshold = (std::uint64_t{1} << 24) * q * q;
  p.density_coefficient = Rational(1, static_cast<std::int64_t>(256 * q));
  return p;
}

// Smallest prime > a (Bertrand: at most 2a).
inline std::uint64_t next_prime(std::uint64_t a) {
  if (a < 1) throw InvalidArgument("next_prime needs a >= 1");
  std::uint64_t p = a + 1;
  while (!is_prime(p)) ++p;
  return p;
}

}  // namespace ergo
