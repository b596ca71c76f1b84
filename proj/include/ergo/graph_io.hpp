#pragma once

// Text formats.
//
// Graph file:
//   n m
//   u v            (m lines, 0 <= u < v < n, strictly increasing in (u, v))
// Lines are separated by '\n'; there is no trailing whitespace and no final
// newline in the canonical form.  The parser tolerates a single final '\n'.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/error.hpp"
#include "ergo/graph.hpp"

namespace ergo {

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  std::size_t start = 0;
  for (;;) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

// Parses exactly `count` space-separated unsigned integers filling the line.
inline bool parse_uints(std::string_view line, std::size_t count, std::vector<std::uint64_t>& out) {
  out.clear();
  const char* p = line.data();
  const char* end = line.data() + line.size();
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) {
      if (p == end || *p != ' ') return false;
      ++p;
    }
    std::uint64_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{} || next == p) return false;
    out.push_back(v);
    p = next;
  }
  return p == end;
}

}  // namespace detail

inline Graph parse_graph(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::vector<std::uint64_t> nums;
  if (lines.empty() || !detail::parse_uints(lines[0], 2, nums))
    throw FormatError("malformed header: expected \"n m\"");
  const std::uint64_t n = nums[0];
  const std::uint64_t m = nums[1];
  if (n > (std::uint64_t{1} << 24)) throw FormatError("vertex count too large");
  if (lines.size() != m + 1)
    throw FormatError("header declares " + std::to_string(m) + " edges but file has " +
                      std::to_string(lines.size() - 1) + " edge lines");
  Graph g(static_cast<std::size_t>(n));
  std::uint64_t pu = 0, pv = 0;
  for (std::size_t i = 1; i <= m; ++i) {
    if (!detail::parse_uints(lines[i], 2, nums))
      throw FormatError("line " + std::to_string(i + 1) + ": malformed edge \"" + std::string(lines[i]) + "\"");
    const auto u = nums[0], v = nums[1];
    if (u == v) throw FormatError("line " + std::to_string(i + 1) + ": self-loop at " + std::to_string(u));
    if (u >= n || v >= n) throw FormatError("line " + std::to_string(i + 1) + ": vertex index out of range");
    if (u > v) throw FormatError("line " + std::to_string(i + 1) + ": unsorted pair (expected u < v)");
    if (i > 1 && (u < pu || (u == pu && v <= pv)))
      throw FormatError("line " + std::to_string(i + 1) + ": duplicate or out-of-order edge");
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    pu = u;
    pv = v;
  }
  return g;
}

inline std::string emit_graph(const Graph& g) {
  std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count());
  for (const auto& [u, v] : g.edges()) {
    out += '\n';
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes via a sibling temp file and rename, so readers never observe a
// partially written artifact.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

}  // namespace ergo
