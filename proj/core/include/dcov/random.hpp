#ifndef DCOV_RANDOM_HPP
#define DCOV_RANDOM_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>

namespace dcov {

/// SplitMix64 (Steele, Lea and Flood). Used to expand seeds and to derive
/// substream keys.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}
  std::uint64_t next() noexcept;

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman and Vigna), seeded through SplitMix64.
///
/// Every random quantity in the library is built from this generator with
/// integer arithmetic or explicit formulas, never from <random> distributions,
/// so a seed produces the same stream on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  /// Independent stream keyed by (seed, path...), e.g. (seed, cell, replicate).
  static Rng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform integer in [0, bound), unbiased by rejection. bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal by the Marsaglia polar method.
  double normal() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Fills perm with a uniformly random permutation of [0, perm.size())
/// by Fisher-Yates.
void random_permutation(Rng& rng, std::span<std::size_t> perm) noexcept;

}  // namespace dcov

#endif  // DCOV_RANDOM_HPP
