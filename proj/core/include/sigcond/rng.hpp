#pragma once

#include <cstdint>

namespace sigcond {

/// Deterministic counter-style generator (splitmix64). Substreams derived
/// from (seed, index) do not depend on thread scheduling, so parallel
/// experiment runs sample exactly like sequential ones.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 rng(seed + 0x9E3779B97F4A7C15ull * (index + 1));
    rng.next();  // decorrelate adjacent indices
    return rng;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n). Rejection sampling keeps it unbiased and
  /// platform-independent.
  std::uint64_t bounded(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace sigcond
