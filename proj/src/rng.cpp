#include "sketchlevel/rng.hpp"

#include <cmath>

namespace sketchlevel {

SplitMix64::result_type SplitMix64::operator()() noexcept {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t SplitMix64::below(std::uint64_t n) noexcept {
  auto k = static_cast<std::uint64_t>(std::floor(uniform() * static_cast<double>(n)));
  return k < n ? k : n - 1;
}

}  // namespace sketchlevel
