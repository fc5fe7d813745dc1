#pragma once

/**
 * Portable seeded randomness.
 *
 * std::mt19937_64 has a fully specified output sequence, but the standard
 * distributions do not, so every draw here goes through the helpers below.
 * Independent streams are derived from one user seed with SplitMix64:
 *   stream_seed = splitmix64(seed ^ (stream_id * 0x9E3779B97F4A7C15)).
 */

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace clipperplus {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stream identifiers used by the scenario generator.
enum class Stream : std::uint64_t {
  kCloud = 1,
  kTransform = 2,
  kNoise = 3,
  kClutter = 4,
  kAssociations = 5,
  kInitialGuess = 6,
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, Stream stream)
      : engine_(splitmix64(seed ^ (static_cast<std::uint64_t>(stream) * 0x9E3779B97F4A7C15ULL))) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound), bound > 0, by rejection (no modulo bias).
  std::uint64_t index(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  /// Fisher-Yates.
  template <typename Container>
  void shuffle(Container& c) {
    for (std::size_t i = c.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(index(i));
      std::swap(c[i - 1], c[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace clipperplus
