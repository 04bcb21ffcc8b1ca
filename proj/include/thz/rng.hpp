#pragma once

#include <cstdint>
#include <random>

namespace thz {

using Rng = std::mt19937_64;

// splitmix64 finalizer; decorrelates per-trial streams derived from one seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Documented per-trial seed derivation: seed_t = hash(seed, trial_index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial_index) {
  return mix64(mix64(seed) ^ mix64(trial_index + 0x51ed270b7a7c1611ULL));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace thz
