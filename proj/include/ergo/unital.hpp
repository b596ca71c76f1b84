#pragma once

// The Hermitian unital in PG(2, q^2) as a bipartite incidence graph.
//
//   Y = points with x0^{q+1} + x1^{q+1} + x2^{q+1} = 0   (q^3 + 1 of them)
//   X = secant lines, meeting the curve in q + 1 points   (q^4 - q^3 + q^2)
//
// Each point is on q^2 secants; two points lie on exactly one common line, so
// the incidence graph is C4-free.  Coordinates are normalised (first nonzero
// entry 1) and both sides are indexed in lexicographic order of their codes.

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ergo/error.hpp"
#include "ergo/field.hpp"
#include "ergo/graph_io.hpp"
#include "ergo/random.hpp"

namespace ergo {

using Coords = std::array<FieldTable::Element, 3>;

inline Coords normalize(const FieldTable& f, Coords c) {
  std::size_t lead = 0;
  while (lead < 3 && c[lead] == 0) ++lead;
  if (lead == 3) throw InvalidArgument("zero vector has no projective point");
  const auto s = f.inv(c[lead]);
  for (auto& e : c) e = f.mul(e, s);
  return c;
}

inline FieldTable::Element dot(const FieldTable& f, const Coords& a, const Coords& b) {
  return f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]));
}

inline Coords cross(const FieldTable& f, const Coords& a, const Coords& b) {
  return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])), f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
          f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

// x0^{q+1} + x1^{q+1} + x2^{q+1}, an element of GF(q).
inline std::uint32_t hermitian_form(const FieldTable& f, const Coords& c) {
  return f.padd(f.padd(f.norm(c[0]), f.norm(c[1])), f.norm(c[2]));
}

// Bipartite graph with parts X and Y stored as sorted adjacency lists.
class BipartiteIncidence {
 public:
  BipartiteIncidence() = default;
  BipartiteIncidence(std::size_t nx, std::size_t ny) : x_adj_(nx), y_adj_(ny) {}

  std::size_t x_count() const noexcept { return x_adj_.size(); }
  std::size_t y_count() const noexcept { return y_adj_.size(); }
  std::size_t incidence_count() const noexcept { return m_; }

  const std::vector<std::uint32_t>& x_neighbors(std::uint32_t x) const { return x_adj_.at(x); }
  const std::vector<std::uint32_t>& y_neighbors(std::uint32_t y) const { return y_adj_.at(y); }
  std::size_t x_degree(std::uint32_t x) const { return x_adj_.at(x).size(); }
  std::size_t y_degree(std::uint32_t y) const { return y_adj_.at(y).size(); }

  bool adjacent(std::uint32_t x, std::uint32_t y) const {
    const auto& row = x_adj_.at(x);
    return std::binary_search(row.begin(), row.end(), y);
  }

  // Returns false if the incidence was already present.
  bool add_incidence(std::uint32_t x, std::uint32_t y) {
    if (x >= x_count() || y >= y_count()) throw InvalidArgument("incidence index out of range");
    auto& row = x_adj_[x];
    auto it = std::lower_bound(row.begin(), row.end(), y);
    if (it != row.end() && *it == y) return false;
    row.insert(it, y);
    auto& col = y_adj_[y];
    col.insert(std::lower_bound(col.begin(), col.end(), x), x);
    ++m_;
    return true;
  }

  // Common X-neighbours of two Y vertices, ascending.
  std::vector<std::uint32_t> common_x(std::uint32_t y1, std::uint32_t y2) const {
    std::vector<std::uint32_t> out;
    const auto &a = y_adj_.at(y1), &b = y_adj_.at(y2);
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  // Common Y-neighbours of two X vertices, ascending.
  std::vector<std::uint32_t> common_y(std::uint32_t x1, std::uint32_t x2) const {
    std::vector<std::uint32_t> out;
    const auto &a = x_adj_.at(x1), &b = x_adj_.at(x2);
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  // Geometry, present when built by hermitian_unital.
  std::uint32_t q = 0;
  std::vector<Coords> line_coords;   // per x
  std::vector<Coords> point_coords;  // per y

  bool operator==(const BipartiteIncidence& o) const { return x_adj_ == o.x_adj_ && y_adj_ == o.y_adj_; }

 private:
  std::vector<std::vector<std::uint32_t>> x_adj_;
  std::vector<std::vector<std::uint32_t>> y_adj_;
  std::size_t m_ = 0;
};

// Incidence budget for hermitian_unital: |X| (q + 1) <= 5e7, i.e. q <= 31.
inline constexpr std::uint64_t kMaxUnitalIncidences = 50'000'000;

inline std::uint64_t unital_x_count(std::uint64_t q) { return q * q * q * q - q * q * q + q * q; }
inline std::uint64_t unital_y_count(std::uint64_t q) { return q * q * q + 1; }

inline BipartiteIncidence hermitian_unital(std::uint32_t q) {
  const FieldTable f(q);
  const std::uint64_t want_x = unital_x_count(q), want_y = unital_y_count(q);
  if (want_x * (q + 1) > kMaxUnitalIncidences)
    throw InvalidArgument("q = " + std::to_string(q) + " needs " + std::to_string(want_x * (q + 1)) +
                          " incidences, above the memory guard of " + std::to_string(kMaxUnitalIncidences));
  const std::uint32_t order = f.order();

  // Points of the curve, generated in lexicographic order of normalised codes.
  std::vector<Coords> pts;
  auto consider = [&](Coords c) {
    if (hermitian_form(f, c) == 0) pts.push_back(c);
  };
  consider({0, 0, 1});
  for (std::uint32_t a = 0; a < order; ++a) consider({0, 1, a});
  for (std::uint32_t a = 0; a < order; ++a)
    for (std::uint32_t b = 0; b < order; ++b) consider({1, a, b});
  if (pts.size() != want_y) throw InvariantViolation("unital has " + std::to_string(pts.size()) + " points");

  auto key = [&](const Coords& c) {
    return (static_cast<std::uint64_t>(c[0]) * order + c[1]) * order + c[2];
  };
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  index.reserve(pts.size() * 2);
  for (std::uint32_t i = 0; i < pts.size(); ++i) index.emplace(key(pts[i]), i);

  // Trace-zero elements: z + z^q = 0.
  std::vector<FieldTable::Element> trace_kernel;
  for (std::uint32_t z = 0; z < order; ++z)
    if (f.add(z, f.conj(z)) == 0) trace_kernel.push_back(z);

  // With P1, P2 on the curve, H(P1 + t P2) = Tr(t B) where B = h(P2, P1), so
  // the secant through P1, P2 meets the curve in P2 and P1 + t P2 for
  // t in B^{-1} ker(Tr).  Each line through P_i is visited once (stamps);
  // it is kept only when P_i is its smallest point.
  struct Line {
    Coords coords;
    std::vector<std::uint32_t> members;
  };
  std::vector<Line> lines;
  lines.reserve(want_x);
  std::vector<std::uint32_t> seen_stamp(pts.size(), 0);
  std::vector<std::uint32_t> members;
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    const std::uint32_t stamp = i + 1;
    for (std::uint32_t j = i + 1; j < pts.size(); ++j) {
      if (seen_stamp[j] == stamp) continue;
      const Coords& p1 = pts[i];
      const Coords& p2 = pts[j];
      Coords p1c{f.conj(p1[0]), f.conj(p1[1]), f.conj(p1[2])};
      const auto b = dot(f, p2, p1c);
      if (b == 0) throw InvariantViolation("totally isotropic secant");
      const auto binv = f.inv(b);
      members.clear();
      members.push_back(j);
      bool earlier = false;
      for (auto k : trace_kernel) {
        const auto t = f.mul(binv, k);
        Coords c{f.add(p1[0], f.mul(t, p2[0])), f.add(p1[1], f.mul(t, p2[1])), f.add(p1[2], f.mul(t, p2[2]))};
        auto it = index.find(key(normalize(f, c)));
        if (it == index.end()) throw InvariantViolation("secant point off the curve");
        members.push_back(it->second);
        if (it->second < i) earlier = true;
      }
      for (auto m : members) seen_stamp[m] = stamp;
      if (earlier) continue;
      std::sort(members.begin(), members.end());
      lines.push_back({normalize(f, cross(f, p1, p2)), members});
    }
  }
  if (lines.size() != want_x) throw InvariantViolation("unital has " + std::to_string(lines.size()) + " secants");
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.coords < b.coords; });

  BipartiteIncidence inc(lines.size(), pts.size());
  inc.q = q;
  inc.point_coords = pts;
  inc.line_coords.reserve(lines.size());
  for (std::uint32_t x = 0; x < lines.size(); ++x) {
    inc.line_coords.push_back(lines[x].coords);
    for (auto y : lines[x].members) inc.add_incidence(x, y);
  }
  for (std::uint32_t x = 0; x < inc.x_count(); ++x)
    if (inc.x_degree(x) != q + 1) throw InvariantViolation("secant " + std::to_string(x) + " has wrong degree");
  for (std::uint32_t y = 0; y < inc.y_count(); ++y)
    if (inc.y_degree(y) != static_cast<std::size_t>(q) * q)
      throw InvariantViolation("point " + std::to_string(y) + " has wrong degree");
  return inc;
}

// ---------------------------------------------------------------------------
// Property verification.

enum class CheckMode { exhaustive, sampled };

inline const char* to_string(CheckMode m) { return m == CheckMode::exhaustive ? "exhaustive" : "sampled"; }

struct PropertyCheck {
  std::string name;
  bool passed = true;
  CheckMode mode = CheckMode::exhaustive;
  std::uint64_t checked = 0;
  std::vector<std::uint32_t> witness;  // meaning depends on the property
  std::string detail;
};

struct UnitalReport {
  std::uint32_t q = 0;
  CheckMode mode = CheckMode::exhaustive;
  std::uint64_t seed = 0;
  std::vector<PropertyCheck> properties;  // (a) counts, (b) degrees, (c) C4-free, (d) no K4 subdivision

  bool passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyCheck& p) { return p.passed; });
  }
  const PropertyCheck& property(std::string_view name) const {
    for (const auto& p : properties)
      if (p.name == name) return p;
    throw InvalidArgument("no property " + std::string(name));
  }
};

// Largest q for which the exhaustive mode enumerates every K4-subdivision
// candidate (pairwise meeting line quadruples).
inline constexpr std::uint32_t kMaxExhaustiveUnitalQ = 5;

namespace detail {

// Six meeting points of four pairwise meeting lines, or false when some pair
// is disjoint.  Order: y12, y13, y14, y23, y24, y34.
template <typename Meet>
bool onan_points(const std::array<std::uint32_t, 4>& xs, Meet&& meet, std::array<std::uint32_t, 6>& ys) {
  std::size_t k = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) {
      const auto y = meet(xs[a], xs[b]);
      if (y == UINT32_MAX) return false;
      ys[k++] = y;
    }
  return true;
}

inline bool all_distinct(std::array<std::uint32_t, 6> ys) {
  std::sort(ys.begin(), ys.end());
  return std::adjacent_find(ys.begin(), ys.end()) == ys.end();
}

}  // namespace detail

inline UnitalReport verify_unital_properties(const BipartiteIncidence& inc, std::uint32_t q, CheckMode mode,
                                             std::uint64_t seed, std::uint64_t samples = 20000) {
  if (mode == CheckMode::exhaustive && q > kMaxExhaustiveUnitalQ)
    throw InvalidArgument("exhaustive unital verification is limited to q <= " +
                          std::to_string(kMaxExhaustiveUnitalQ));
  UnitalReport rep;
  rep.q = q;
  rep.mode = mode;
  rep.seed = seed;
  const std::size_t nx = inc.x_count(), ny = inc.y_count();

  PropertyCheck a{"counts", true, CheckMode::exhaustive, 2, {}, {}};
  if (nx != unital_x_count(q) || ny != unital_y_count(q)) {
    a.passed = false;
    a.detail = "|X| = " + std::to_string(nx) + ", |Y| = " + std::to_string(ny);
  }
  rep.properties.push_back(a);

  PropertyCheck b{"degrees", true, CheckMode::exhaustive, nx + ny, {}, {}};
  for (std::uint32_t x = 0; x < nx && b.passed; ++x)
    if (inc.x_degree(x) != q + 1) {
      b.passed = false;
      b.witness = {x};
      b.detail = "x " + std::to_string(x) + " has degree " + std::to_string(inc.x_degree(x));
    }
  for (std::uint32_t y = 0; y < ny && b.passed; ++y)
    if (inc.y_degree(y) != static_cast<std::size_t>(q) * q) {
      b.passed = false;
      b.witness = {y};
      b.detail = "y " + std::to_string(y) + " has degree " + std::to_string(inc.y_degree(y));
    }
  rep.properties.push_back(b);

  SplitMix64 rng(seed);

  // (c) no two Y vertices with two common X neighbours.  Witness: y1 y2 x1 x2.
  PropertyCheck c{"c4_free", true, mode, 0, {}, {}};
  if (mode == CheckMode::exhaustive) {
    std::vector<std::uint32_t> count(ny, 0), first(ny, 0), stamp(ny, UINT32_MAX);
    for (std::uint32_t y1 = 0; y1 < ny && c.passed; ++y1) {
      for (auto x : inc.y_neighbors(y1)) {
        for (auto y2 : inc.x_neighbors(x)) {
          if (y2 <= y1) continue;
          if (stamp[y2] != y1) {
            stamp[y2] = y1;
            count[y2] = 0;
            first[y2] = x;
          }
          if (++count[y2] == 2) {
            c.passed = false;
            c.witness = {y1, y2, first[y2], x};
            break;
          }
        }
        if (!c.passed) break;
      }
    }
    c.checked = static_cast<std::uint64_t>(ny) * (ny - 1) / 2;
  } else if (ny >= 2) {
    for (std::uint64_t s = 0; s < samples && c.passed; ++s) {
      const auto y1 = static_cast<std::uint32_t>(rng.below(ny));
      auto y2 = static_cast<std::uint32_t>(rng.below(ny - 1));
      if (y2 >= y1) ++y2;
      const auto common = inc.common_x(y1, y2);
      ++c.checked;
      if (common.size() >= 2) {
        c.passed = false;
        c.witness = {std::min(y1, y2), std::max(y1, y2), common[0], common[1]};
      }
    }
  }
  if (!c.passed)
    c.detail = "y " + std::to_string(c.witness[0]) + " and y " + std::to_string(c.witness[1]) +
               " share x " + std::to_string(c.witness[2]) + " and x " + std::to_string(c.witness[3]);
  rep.properties.push_back(c);

  // (d) no four X vertices meeting pairwise in six distinct Y vertices.
  // Witness: x1 x2 x3 x4 y12 y13 y14 y23 y24 y34.
  PropertyCheck d{"no_k4_subdivision", true, mode, 0, {}, {}};
  auto record = [&](const std::array<std::uint32_t, 4>& xs, const std::array<std::uint32_t, 6>& ys) {
    d.passed = false;
    d.witness.assign(xs.begin(), xs.end());
    d.witness.insert(d.witness.end(), ys.begin(), ys.end());
  };
  if (mode == CheckMode::exhaustive) {
    // meet[x1 * nx + x2] = common Y vertex (C4-freeness makes it unique when
    // (c) passed; otherwise the last one written).
    std::vector<std::uint32_t> meet(nx * nx, UINT32_MAX);
    for (std::uint32_t y = 0; y < ny; ++y) {
      const auto& lines = inc.y_neighbors(y);
      for (auto x1 : lines)
        for (auto x2 : lines)
          if (x1 != x2) meet[static_cast<std::size_t>(x1) * nx + x2] = y;
    }
    auto m = [&](std::uint32_t u, std::uint32_t v) { return meet[static_cast<std::size_t>(u) * nx + v]; };
    std::vector<std::vector<std::uint32_t>> later(nx);
    for (std::uint32_t u = 0; u < nx; ++u)
      for (std::uint32_t v = u + 1; v < nx; ++v)
        if (m(u, v) != UINT32_MAX) later[u].push_back(v);
    for (std::uint32_t x1 = 0; x1 < nx && d.passed; ++x1)
      for (auto x2 : later[x1]) {
        if (!d.passed) break;
        for (auto x3 : later[x2]) {
          if (m(x1, x3) == UINT32_MAX) continue;
          for (auto x4 : later[x3]) {
            if (m(x1, x4) == UINT32_MAX || m(x2, x4) == UINT32_MAX) continue;
            ++d.checked;
            const std::array<std::uint32_t, 4> xs{x1, x2, x3, x4};
            std::array<std::uint32_t, 6> ys{};
            detail::onan_points(xs, m, ys);
            if (detail::all_distinct(ys)) {
              record(xs, ys);
              break;
            }
          }
          if (!d.passed) break;
        }
      }
  } else if (nx >= 4 && q >= 2) {
    auto m = [&](std::uint32_t u, std::uint32_t v) {
      const auto cy = inc.common_y(u, v);
      return cy.empty() ? UINT32_MAX : cy.front();
    };
    auto pick_other = [&](const std::vector<std::uint32_t>& v, std::uint32_t avoid) {
      for (;;) {
        const auto e = v[rng.below(v.size())];
        if (e != avoid) return e;
      }
    };
    // Targeted sampling: a random triangle x1 x2 x3 of pairwise meeting lines
    // with distinct meeting points, then every x4 meeting x1 in a fresh point.
    for (std::uint64_t s = 0; s < samples && d.passed; ++s) {
      const auto x1 = static_cast<std::uint32_t>(rng.below(nx));
      const auto& on1 = inc.x_neighbors(x1);
      if (on1.size() < 3) continue;
      const auto y12 = on1[rng.below(on1.size())];
      const auto y13 = pick_other(on1, y12);
      if (inc.y_degree(y12) < 2 || inc.y_degree(y13) < 2) continue;
      const auto x2 = pick_other(inc.y_neighbors(y12), x1);
      const auto x3 = pick_other(inc.y_neighbors(y13), x1);
      if (x2 == x3) continue;
      const auto y23 = m(x2, x3);
      if (y23 == UINT32_MAX || y23 == y12 || y23 == y13) continue;
      for (auto y14 : on1) {
        if (y14 == y12 || y14 == y13) continue;
        for (auto x4 : inc.y_neighbors(y14)) {
          if (x4 == x1 || x4 == x2 || x4 == x3) continue;
          const std::array<std::uint32_t, 4> xs{x1, x2, x3, x4};
          std::array<std::uint32_t, 6> ys{};
          if (!detail::onan_points(xs, m, ys)) continue;
          ++d.checked;
          if (detail::all_distinct(ys)) {
            record(xs, ys);
            break;
          }
        }
        if (!d.passed) break;
      }
    }
  }
  if (!d.passed) {
    std::ostringstream os;
    os << "x";
    for (std::size_t i = 0; i < 4; ++i) os << ' ' << d.witness[i];
    os << " meet in y";
    for (std::size_t i = 4; i < 10; ++i) os << ' ' << d.witness[i];
    d.detail = os.str();
  }
  rep.properties.push_back(d);
  return rep;
}

// ---------------------------------------------------------------------------
// Text format:
//   bipartite |X| |Y| m
//   x y            (m lines, sorted by (x, y))
// Same line conventions as the graph file.

inline std::string emit_bipartite(const BipartiteIncidence& inc) {
  std::string out = "bipartite " + std::to_string(inc.x_count()) + " " + std::to_string(inc.y_count()) + " " +
                    std::to_string(inc.incidence_count());
  for (std::uint32_t x = 0; x < inc.x_count(); ++x)
    for (auto y : inc.x_neighbors(x)) {
      out += '\n';
      out += std::to_string(x);
      out += ' ';
      out += std::to_string(y);
    }
  return out;
}

inline BipartiteIncidence parse_bipartite(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::string_view head = lines.front();
  constexpr std::string_view tag = "bipartite ";
  if (head.substr(0, tag.size()) != tag) throw FormatError("bipartite header must start with \"bipartite \"");
  std::vector<std::uint64_t> v;
  if (!detail::parse_uints(head.substr(tag.size()), 3, v)) throw FormatError("malformed bipartite header");
  const std::uint64_t nx = v[0], ny = v[1], m = v[2];
  if (lines.size() != m + 1)
    throw FormatError("header promises " + std::to_string(m) + " incidences, found " +
                      std::to_string(lines.size() - 1));
  BipartiteIncidence inc(nx, ny);
  std::uint64_t px = 0, py = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (!detail::parse_uints(lines[i], 2, v)) throw FormatError("malformed incidence line " + std::to_string(i + 1));
    if (v[0] >= nx || v[1] >= ny) throw FormatError("incidence index out of range on line " + std::to_string(i + 1));
    if (i > 1 && !(px < v[0] || (px == v[0] && py < v[1])))
      throw FormatError("incidences unsorted or duplicated on line " + std::to_string(i + 1));
    px = v[0];
    py = v[1];
    inc.add_incidence(static_cast<std::uint32_t>(v[0]), static_cast<std::uint32_t>(v[1]));
  }
  return inc;
}

}  // namespace ergo
