#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ergo/error.hpp"

namespace ergo {

using Vertex = std::uint32_t;
using Word = std::uint64_t;

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t n) noexcept { return (n + kWordBits - 1) / kWordBits; }

// Raw word-array helpers shared by the search kernels.  They work on
// preallocated buffers so that the hot loops never allocate.
namespace bits {

inline bool test(const Word* w, std::size_t i) noexcept { return (w[i / kWordBits] >> (i % kWordBits)) & 1u; }
inline void set(Word* w, std::size_t i) noexcept { w[i / kWordBits] |= Word{1} << (i % kWordBits); }
inline void reset(Word* w, std::size_t i) noexcept { w[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

inline std::size_t count(const Word* w, std::size_t nw) noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < nw; ++i) c += static_cast<std::size_t>(std::popcount(w[i]));
  return c;
}

inline bool any(const Word* w, std::size_t nw) noexcept {
  for (std::size_t i = 0; i < nw; ++i)
    if (w[i]) return true;
  return false;
}

inline std::size_t and_count(const Word* a, const Word* b, std::size_t nw) noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < nw; ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

// Calls f(index) for every set bit in ascending order; stops early when f
// returns false.  Returns false iff stopped early.
template <typename F>
bool for_each(const Word* w, std::size_t nw, F&& f) {
  for (std::size_t i = 0; i < nw; ++i) {
    Word x = w[i];
    while (x) {
      const std::size_t b = static_cast<std::size_t>(std::countr_zero(x));
      x &= x - 1;
      if (!f(static_cast<Vertex>(i * kWordBits + b))) return false;
    }
  }
  return true;
}

// Smallest set index >= from, or npos.
inline std::size_t next(const Word* w, std::size_t nw, std::size_t from) noexcept {
  std::size_t i = from / kWordBits;
  if (i >= nw) return static_cast<std::size_t>(-1);
  Word x = w[i] & (~Word{0} << (from % kWordBits));
  for (;;) {
    if (x) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(x));
    if (++i >= nw) return static_cast<std::size_t>(-1);
    x = w[i];
  }
}

// Clears every index <= bound.
inline void clear_through(Word* w, std::size_t nw, std::size_t bound) noexcept {
  const std::size_t full = bound / kWordBits;
  for (std::size_t i = 0; i < full && i < nw; ++i) w[i] = 0;
  if (full < nw) {
    const std::size_t b = bound % kWordBits;
    w[full] &= (b == kWordBits - 1) ? Word{0} : (~Word{0} << (b + 1));
  }
}

}  // namespace bits

// A subset of [0, universe) stored as a bitset with a cached cardinality.
class VertexSet {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : universe_(universe), words_(words_for(universe), 0) {}

  VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }

  template <typename Range>
  static VertexSet of(std::size_t universe, const Range& members) {
    VertexSet s(universe);
    for (auto v : members) s.insert(static_cast<Vertex>(v));
    return s;
  }

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (auto& w : s.words_) w = ~Word{0};
    s.trim();
    s.size_ = universe;
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool contains(Vertex v) const noexcept { return v < universe_ && bits::test(words_.data(), v); }

  void insert(Vertex v) {
    check(v);
    if (!bits::test(words_.data(), v)) {
      bits::set(words_.data(), v);
      ++size_;
    }
  }

  void erase(Vertex v) {
    check(v);
    if (bits::test(words_.data(), v)) {
      bits::reset(words_.data(), v);
      --size_;
    }
  }

  void clear() noexcept {
    std::fill(words_.begin(), words_.end(), Word{0});
    size_ = 0;
  }

  std::size_t first() const noexcept { return bits::next(words_.data(), words_.size(), 0); }
  std::size_t next(std::size_t from) const noexcept { return bits::next(words_.data(), words_.size(), from); }

  template <typename F>
  void for_each(F&& f) const {
    bits::for_each(words_.data(), words_.size(), [&](Vertex v) {
      f(v);
      return true;
    });
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(size_);
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  VertexSet& operator&=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    recount();
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    recount();
    return *this;
  }
  // Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    recount();
    return *this;
  }

  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  VertexSet complement() const {
    VertexSet c(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
    c.trim();
    c.recount();
    return c;
  }

  std::size_t intersection_size(const VertexSet& o) const {
    same_universe(o);
    return bits::and_count(words_.data(), o.words_.data(), words_.size());
  }

  bool intersects(const VertexSet& o) const { return intersection_size(o) != 0; }

  bool is_subset_of(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  std::span<const Word> words() const noexcept { return words_; }
  const Word* data() const noexcept { return words_.data(); }
  std::size_t word_count() const noexcept { return words_.size(); }

  bool operator==(const VertexSet& o) const noexcept { return universe_ == o.universe_ && words_ == o.words_; }

  // Orders by sorted member list, lexicographically.
  std::strong_ordering operator<=>(const VertexSet& o) const {
    const auto a = members();
    const auto b = o.members();
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

  std::string to_string() const {
    std::string s = "{";
    bool first_member = true;
    for_each([&](Vertex v) {
      if (!first_member) s += ',';
      s += std::to_string(v);
      first_member = false;
    });
    return s + "}";
  }

 private:
  void check(Vertex v) const {
    if (v >= universe_)
      throw InvalidArgument("vertex " + std::to_string(v) + " outside [0, " + std::to_string(universe_) + ")");
  }
  void same_universe(const VertexSet& o) const {
    if (o.universe_ != universe_) throw InvalidArgument("vertex sets over different universes");
  }
  void trim() noexcept {
    if (universe_ % kWordBits && !words_.empty()) words_.back() &= (Word{1} << (universe_ % kWordBits)) - 1;
  }
  void recount() noexcept { size_ = bits::count(words_.data(), words_.size()); }

  std::size_t universe_ = 0;
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace ergo
