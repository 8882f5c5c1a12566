#pragma once

#include <cstdint>

namespace walklab {

/// SplitMix64 finalizer (Stafford mix13). Full avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based stream generator: output(i) = mix64(key + i * golden).
/// The key is derived from (seed, stream_id), so streams are reproducible,
/// independent for distinct ids, and skippable in O(1) — replications can be
/// sharded across threads or machines without coordination.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream_id)
      : key_(mix64(mix64(seed + kGolden) + stream_id)) {}

  std::uint64_t next() { return mix64(key_ + (++counter_) * kGolden); }

  std::uint64_t counter() const { return counter_; }
  void skip_to(std::uint64_t counter) { counter_ = counter; }

  /// Unbiased draw from {0, ..., bound-1} by power-of-two mask rejection.
  std::uint32_t next_below(std::uint32_t bound) {
    std::uint32_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    for (;;) {
      const std::uint32_t v = static_cast<std::uint32_t>(next()) & mask;
      if (v < bound) return v;
    }
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace walklab
