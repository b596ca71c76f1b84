#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace ergo {

// SplitMix64 (Steele, Lea, Flood 2014).  Every randomized routine in the
// library draws from this generator so that outputs are reproducible across
// implementations:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// uniform()      = (next() >> 11) * 2^-53, in [0, 1)
// bernoulli(p)   = uniform() < p
// below(k)       = rejection sampling: draw z until z >= (2^64 - k) mod k,
//                  return z mod k
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  std::uint64_t below(std::uint64_t k) noexcept {
    if (k <= 1) return 0;
    const std::uint64_t threshold = (0 - k) % k;
    for (;;) {
      const std::uint64_t z = next();
      if (z >= threshold) return z % k;
    }
  }

 private:
  std::uint64_t state_;
};

// Independent stream for sub-task `stream` of a run seeded with `seed`.
// Used for per-trial / per-chunk seed splitting so that results do not depend
// on how work is scheduled.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  SplitMix64 g(seed ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
  g.next();
  return g.next();
}

// Fisher-Yates shuffle driven by below(); std::shuffle is not portable across
// standard libraries.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

inline std::vector<std::uint32_t> random_permutation(std::size_t n, SplitMix64& rng) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  shuffle(perm, rng);
  return perm;
}

}  // namespace ergo
