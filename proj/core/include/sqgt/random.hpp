#pragma once

// Deterministic seeding utilities.  All randomized constructions in the
// library accept an explicit 64-bit seed and derive per-stream seeds with a
// counter-based splitmix64 step, so results are identical across runs,
// platforms, and thread counts.

#include <cstdint>
#include <random>

namespace sqgt {

// One splitmix64 output step; a high-quality 64 -> 64 bit mixer.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent sub-seed for logical stream `stream` of a base seed.  The
// stream index is mixed in before the output step so (seed, 0) and
// (seed+1, 0) do not collide with (seed, 1).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
}

// Unbiased uniform draw from [0, bound) by rejection sampling, independent
// of std::uniform_int_distribution's unspecified algorithm.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace sqgt
