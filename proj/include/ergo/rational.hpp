#pragma once

// Exact rationals over int64 with 128-bit intermediates.  Enough for the
// exponent arithmetic (small numerators and denominators) and exact parameter
// gates; overflow is detected and reported, never wrapped.

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "ergo/error.hpp"

namespace ergo {

class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  // "3", "-2/7", "0.25", "1e-3" (decimal forms are read exactly).
  static Rational parse(std::string_view s) {
    auto fail = [&] { return InvalidArgument("not a rational number: \"" + std::string(s) + "\""); };
    if (s.empty()) throw fail();
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      std::int64_t n = 0, d = 0;
      if (!whole(s.substr(0, slash), n) || !whole(s.substr(slash + 1), d)) throw fail();
      if (d == 0) throw InvalidArgument("zero denominator in \"" + std::string(s) + "\"");
      return Rational(n, d);
    }
    std::string_view mant = s;
    std::int64_t exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mant = s.substr(0, e);
      if (!whole(s.substr(e + 1), exp10) || exp10 < -18 || exp10 > 18) throw fail();
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
      neg = mant[0] == '-';
      mant.remove_prefix(1);
    }
    std::string digits;
    std::int64_t scale = 0;
    bool dot = false;
    for (char c : mant) {
      if (c == '.') {
        if (dot) throw fail();
        dot = true;
      } else if (c >= '0' && c <= '9') {
        digits += c;
        if (dot) ++scale;
      } else {
        throw fail();
      }
    }
    if (digits.empty() || digits.size() > 18) throw fail();
    Rational r(std::stoll(digits));
    exp10 -= scale;
    for (; exp10 > 0; --exp10) r = r * Rational(10);
    for (; exp10 < 0; ++exp10) r = r / Rational(10);
    return neg ? -r : r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InvalidArgument("division by zero rational");
    return make(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
  }

 private:
  using Wide = __int128;
  static Wide wide(std::int64_t v) { return static_cast<Wide>(v); }

  static bool whole(std::string_view s, std::int64_t& out) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size() && !s.empty();
  }

  static Wide gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
      const Wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(Wide n, Wide d) {
    if (d == 0) throw InvalidArgument("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const Wide g = gcd(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr Wide lim = static_cast<Wide>(INT64_MAX);
    if (n > lim || n < -lim || d > lim) throw InvalidArgument("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace ergo
