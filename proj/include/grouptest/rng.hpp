#pragma once

#include <cstdint>
#include <random>

namespace gt::rng {

/// Reproducibility contract: trial i of a run with master seed S is driven by
/// its own engine seeded with stream_seed(S, i). Results are then a pure
/// function of (S, i) — independent of thread count and schedule — and
/// std::mt19937_64 has a standard-specified output sequence, so the same
/// build gives identical results on any platform.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer; decorrelates consecutive seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + (index + 1) * kGolden);
}

using Engine = std::mt19937_64;

/// Uniform double in [0,1) with 53 random bits. Own mapping rather than
/// std::uniform_real_distribution, whose output is implementation-defined.
inline double unit_double(Engine& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Engine& g, double p) { return unit_double(g) < p; }

/// Unbiased integer in [0, bound) by rejection; bound >= 1.
inline std::uint64_t uniform_below(Engine& g, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % bound;
}

}  // namespace gt::rng
