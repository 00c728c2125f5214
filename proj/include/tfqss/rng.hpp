#pragma once

#include <cstdint>
#include <limits>

namespace tfqss {

__extension__ using uint128_t = unsigned __int128;

/// Counter-style SplitMix64 generator addressed by (seed, stream).
///
/// Every stream is an independent sequence derived from the master seed, so
/// per-slot streams can be drawn in any order (or in parallel) and still give
/// bit-identical results. Output does not depend on the standard library.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(seed ^ mix(stream + 0x6a09e667f3bcc909ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Fair bit.
  std::uint8_t bit() { return static_cast<std::uint8_t>((*this)() >> 63); }

  /// Uniform integer in [0, bound); bound must be positive. Lemire's
  /// multiply-shift with rejection of the biased tail.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint128_t m = static_cast<uint128_t>((*this)()) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold) {
        return static_cast<std::uint64_t>(m >> 64);
      }
    }
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

// Stream tags for non-slot consumers. Slot streams use the slot index itself.
inline constexpr std::uint64_t kAliceStream = 0x8000000000000000ULL;
inline constexpr std::uint64_t kBobStream = 0x8000000000000001ULL;
inline constexpr std::uint64_t kSamplingStream = 0x8000000000000002ULL;

}  // namespace tfqss
