#pragma once

#include <cstdint>
#include <random>

namespace graphband {

using Rng = std::mt19937_64;

// splitmix64 finalizer; gives well-separated streams for (master seed, stream id)
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
  uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace graphband
