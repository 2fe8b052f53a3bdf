#pragma once

// Portable random primitives. std::mt19937_64 has a fully specified output
// sequence; the distributions of <random> do not, so sampling is done here.
//
// Per-cell seeds for the simulation grid:
//   mix(a, b)  = splitmix64(a ^ splitmix64(b))
//   cell_seed  = mix(mix(master, accuracy_index), repetition_index)
// where splitmix64 is the SplitMix64 output function applied to x + 0x9E3779B97F4A7C15.

#include <cstdint>
#include <random>

namespace dpcost::rng {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) noexcept { return splitmix64(a ^ splitmix64(b)); }

constexpr std::uint64_t cell_seed(std::uint64_t master, std::uint64_t accuracy_index,
                                  std::uint64_t repetition_index) noexcept {
  return mix(mix(master, accuracy_index), repetition_index);
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double unit(Engine& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

/// True with probability p (exactly always for p >= 1, never for p <= 0).
inline bool bernoulli(Engine& gen, double p) { return unit(gen) < p; }

/// Uniform integer in [0, n), n > 0. Draws below 2^64 mod n are rejected
/// so the modulo is unbiased.
inline std::uint64_t below(Engine& gen, std::uint64_t n) {
  const std::uint64_t reject = -n % n;
  std::uint64_t x = gen();
  while (x < reject) x = gen();
  return x % n;
}

/// Fisher-Yates with below(); portable where std::shuffle is not.
template <typename It>
void shuffle(It first, It last, Engine& gen) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = below(gen, i);
    std::swap(first[i - 1], first[j]);
  }
}

}  // namespace dpcost::rng
