#pragma once

#include <cstdint>

namespace irqn {

/// Platform-independent counter-based generator used by the randomized
/// problems. Draw i (i = 0, 1, 2, ...) of a stream with seed s is
///
///   splitmix64_mix(s + (i + 1) * 0x9E3779B97F4A7C15)
///
/// where splitmix64_mix is the SplitMix64 output finalizer. Uniform doubles
/// take the top 53 bits and are centred in their bucket, so they lie strictly
/// inside (0, 1).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z);
  static std::uint64_t at(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return at(seed_, counter_++); }
  double uniform01();
  /// Uniform on the open interval (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace irqn
