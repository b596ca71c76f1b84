#pragma once

// GF(q) and GF(q^2) arithmetic for prime q.
//
// GF(q^2) = GF(q)[x] / (x^2 + a x + b) with (a, b) the lexicographically first
// pair making the quadratic irreducible.  An element c0 + c1 x is encoded as
// the integer c0 + c1 q, so elements of the prime field are exactly the codes
// below q, and integer order on codes is the order used for normalised
// projective coordinates.

#include <cstdint>
#include <string>
#include <vector>

#include "ergo/error.hpp"

namespace ergo {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1u) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class FieldTable {
 public:
  using Element = std::uint32_t;

  static constexpr std::uint32_t kMaxPrime = 101;

  explicit FieldTable(std::uint32_t q) : q_(q) {
    if (!is_prime(q)) throw InvalidArgument("q = " + std::to_string(q) + " is not prime");
    if (q > kMaxPrime) throw InvalidArgument("q = " + std::to_string(q) + " exceeds 101");
    for (std::uint32_t a = 0; a < q && !found_; ++a)
      for (std::uint32_t b = 0; b < q && !found_; ++b) {
        bool root = false;
        for (std::uint32_t t = 0; t < q && !root; ++t) root = (t * t + a * t + b) % q == 0;
        if (!root) {
          a_ = a;
          b_ = b;
          found_ = true;
        }
      }
    inverse_.assign(q, 0);
    for (std::uint32_t x = 1; x < q; ++x)
      for (std::uint32_t y = 1; y < q; ++y)
        if (x * y % q == 1) inverse_[x] = y;
    // Full GF(q^2) tables while they stay small (q <= 45).
    const std::uint32_t n = order();
    if (static_cast<std::uint64_t>(n) * n <= kMaxTableEntries) {
      std::vector<Element> mul(static_cast<std::size_t>(n) * n), inv(n, 0);
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
          mul[static_cast<std::size_t>(x) * n + y] = mul_poly(x, y);
          if (mul[static_cast<std::size_t>(x) * n + y] == 1) inv[x] = y;
        }
      mul_table_ = std::move(mul);
      inv_table_ = std::move(inv);
    }
  }

  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t order() const noexcept { return q_ * q_; }
  // Modulus x^2 + a x + b.
  std::uint32_t modulus_a() const noexcept { return a_; }
  std::uint32_t modulus_b() const noexcept { return b_; }

  // Prime field.
  std::uint32_t padd(std::uint32_t x, std::uint32_t y) const noexcept { return (x + y) % q_; }
  std::uint32_t psub(std::uint32_t x, std::uint32_t y) const noexcept { return (x + q_ - y) % q_; }
  std::uint32_t pmul(std::uint32_t x, std::uint32_t y) const noexcept { return x * y % q_; }
  std::uint32_t pinv(std::uint32_t x) const {
    if (x % q_ == 0) throw InvalidArgument("inverse of zero");
    return inverse_[x % q_];
  }

  Element make(std::uint32_t c0, std::uint32_t c1) const noexcept { return c0 % q_ + (c1 % q_) * q_; }
  std::uint32_t c0(Element z) const noexcept { return z % q_; }
  std::uint32_t c1(Element z) const noexcept { return z / q_; }

  Element add(Element x, Element y) const noexcept { return make(padd(c0(x), c0(y)), padd(c1(x), c1(y))); }
  Element sub(Element x, Element y) const noexcept { return make(psub(c0(x), c0(y)), psub(c1(x), c1(y))); }
  Element neg(Element x) const noexcept { return sub(0, x); }

  Element mul(Element x, Element y) const noexcept {
    if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(x) * order() + y];
    return mul_poly(x, y);
  }

  // Frobenius z -> z^q.  x^q is the other root of the modulus, -a - x.
  Element conj(Element z) const noexcept {
    const std::uint32_t z0 = c0(z), z1 = c1(z);
    return make(psub(z0, pmul(a_, z1)), psub(0, z1));
  }

  // z^{q+1} = z * conj(z), an element of GF(q).
  std::uint32_t norm(Element z) const noexcept { return c0(mul(z, conj(z))); }

  Element inv(Element z) const {
    if (z == 0) throw InvalidArgument("inverse of zero");
    if (!inv_table_.empty()) return inv_table_[z];
    return mul(conj(z), pinv(norm(z)));
  }

  Element pow(Element z, std::uint64_t e) const noexcept {
    Element r = 1;
    while (e) {
      if (e & 1u) r = mul(r, z);
      z = mul(z, z);
      e >>= 1;
    }
    return r;
  }

 private:
  static constexpr std::uint64_t kMaxTableEntries = std::uint64_t{1} << 22;

  Element mul_poly(Element x, Element y) const noexcept {
    const std::uint32_t x0 = c0(x), x1 = c1(x), y0 = c0(y), y1 = c1(y);
    const std::uint32_t hi = pmul(x1, y1);  // coefficient of x^2 = -a x - b
    const std::uint32_t r0 = psub(pmul(x0, y0), pmul(b_, hi));
    const std::uint32_t r1 = psub(padd(pmul(x0, y1), pmul(x1, y0)), pmul(a_, hi));
    return make(r0, r1);
  }

  std::uint32_t q_;
  std::uint32_t a_ = 0, b_ = 0;
  bool found_ = false;
  std::vector<std::uint32_t> inverse_;
  std::vector<Element> mul_table_;
  std::vector<Element> inv_table_;
};

}  // namespace ergo
