#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cutplan {

struct RngSeed {
  std::uint64_t value = 0;

  friend bool operator==(RngSeed, RngSeed) = default;
};

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng make_rng(RngSeed seed) { return Rng(splitmix64(seed.value)); }

/// Stable 64-bit FNV-1a; used to derive per-task seeds from labels.
inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline RngSeed derive_seed(RngSeed master, std::string_view label) {
  return RngSeed{master.value ^ fnv1a64(label)};
}

inline RngSeed derive_seed(RngSeed master, std::uint64_t stream) {
  return RngSeed{splitmix64(master.value ^ splitmix64(stream + 0x632be59bd9b4e019ULL))};
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound), bound > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

}  // namespace cutplan
