#pragma once

#include <cstdint>

namespace rbcsp {

/// SplitMix64. Integer-only state advance, so streams are identical on every
/// platform. Substreams for individual objects come from mix_seed().
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return finalize(state_);
  }

  /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = next();
      if (x >= limit) return x % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  static constexpr std::uint64_t finalize(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Stream tags used to separate independent uses of one seed.
enum class Stream : std::uint64_t {
  constraint = 1,
  trial = 2,
  hypergraph = 3,
  sweep_row = 4,
};

/// Derives the seed of substream `index` within `tag` of `seed`.
constexpr std::uint64_t mix_seed(std::uint64_t seed, Stream tag, std::uint64_t index) noexcept {
  std::uint64_t z = SplitMix64::finalize(seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(tag) + 1));
  z = SplitMix64::finalize(z ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
  return z;
}

}  // namespace rbcsp
