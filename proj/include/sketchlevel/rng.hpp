#pragma once

#include <cstdint>
#include <limits>

namespace sketchlevel {

/// SplitMix64 generator.
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// All arithmetic is modulo 2^64, so the stream for a given seed is identical on
/// every platform. uniform() maps the top 53 bits onto [0, 1).
class SplitMix64 {
public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  double uniform() noexcept;

  /// floor(uniform() * n); n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept;

private:
  std::uint64_t state_;
};

}  // namespace sketchlevel
