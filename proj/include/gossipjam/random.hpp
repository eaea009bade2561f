#pragma once

// Seeded random streams. Generators are std::mt19937_64; independent
// streams are derived from (seed, stream id) through std::seed_seq so that
// replication i of a run never depends on how many draws replication i-1 made.
// The scalar conversions below are spelled out instead of using the <random>
// distributions, whose algorithms differ between standard libraries.

#include <cmath>
#include <cstdint>
#include <random>

namespace gossipjam {

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, bound), bound > 0, by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

/// Exponential waiting time with the given rate.
inline double exponential(std::mt19937_64& rng, double rate) {
  return -std::log1p(-uniform01(rng)) / rate;
}

}  // namespace gossipjam
