#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace netxmit {

/// The single random engine used throughout the library. Every stochastic
/// routine takes an `Rng&` so a run is fully reproducible from its seed.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
/// Used instead of std::uniform_real_distribution so that sampling paths are
/// identical across standard library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound). `bound` must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Rejection on the largest multiple of bound keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable seed derivation. Folds labels into a seed with FNV-1a followed by a
/// splitmix64 finaliser; the result depends only on the values passed, never
/// on call order or platform.
class SeedHasher {
 public:
  explicit SeedHasher(std::uint64_t master) : state_(mix64(master)) {}

  SeedHasher& add(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    state_ = mix64(state_ ^ h);
    return *this;
  }

  SeedHasher& add(std::uint64_t value) {
    state_ = mix64(state_ ^ mix64(value + 0x632be59bd9b4e019ULL));
    return *this;
  }

  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace netxmit
