#pragma once

// Seeding and sampling helpers. Everything here is specified bit-for-bit so
// that a (master_seed, round_index) pair reproduces the same round on any
// standard library; std::uniform_*_distribution is implementation-defined and
// is not used anywhere in the simulator.

#include <cstdint>
#include <random>

namespace nkc {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t round_seed(std::uint64_t master_seed, std::uint64_t round_index) noexcept {
  return splitmix64(master_seed ^ splitmix64(round_index + 0x5851F42D4C957F2DULL));
}

// Named sub-streams of one round.
enum class Stream : std::uint64_t { landscape = 1, agents = 2, auction = 3 };

inline Rng make_stream(std::uint64_t seed, Stream stream) {
  return Rng{splitmix64(seed + 0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(stream))};
}

// Uniform on [0,1) with 53 random mantissa bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n); rejection sampling keeps it unbiased.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

inline bool bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01(rng) < p;
}

}  // namespace nkc
