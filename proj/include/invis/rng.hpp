#pragma once

#include <cstdint>

namespace invis {

/// Counter-based SplitMix64: the k-th draw of stream `seed` depends only on (seed, k).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) for draw `slot` of ray `index`.
inline double uniform01(std::uint64_t seed, std::uint64_t index, std::uint64_t slot) {
  const std::uint64_t h = splitmix64(splitmix64(seed ^ splitmix64(index)) + slot);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace invis
