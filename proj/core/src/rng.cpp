#include "irqn/rng.hpp"

namespace irqn {

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::at(std::uint64_t seed, std::uint64_t index) {
  return mix(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform01() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(next_u64() >> 11) + 0.5) * kScale;
}

}  // namespace irqn
