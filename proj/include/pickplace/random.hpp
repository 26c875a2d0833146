#pragma once

// Thin deterministic sampling helpers over std::mt19937. The standard
// distributions are allowed to differ between library implementations, so the
// planner draws through these instead: same seed, same numbers, everywhere.

#include <cstdint>
#include <random>

namespace pickplace {

using Rng = std::mt19937;

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  const std::uint64_t hi = rng() >> 6;  // 26 bits
  const std::uint64_t lo = rng() >> 5;  // 27 bits
  return static_cast<double>((hi << 27) | lo) * (1.0 / 9007199254740992.0);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Uniform integer in [0, n), unbiased via rejection.
inline int uniform_int(Rng& rng, int n) {
  const std::uint32_t bound = static_cast<std::uint32_t>(n);
  const std::uint32_t limit = UINT32_MAX - UINT32_MAX % bound;
  for (;;) {
    const std::uint32_t r = rng();
    if (r < limit) return static_cast<int>(r % bound);
  }
}

}  // namespace pickplace
