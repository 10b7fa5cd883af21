// Counter-based random streams for reproducible adversaries.
//
// The generator is SplitMix64 (Steele, Lea, Flood 2014). A stream is keyed by
// (seed, salt, t, n) so any round can be regenerated without replaying
// earlier rounds, and the output is identical on every platform. The bounded
// integer and Bernoulli helpers below are fixed here rather than taken from
// <random>, whose distributions are implementation-defined.

#pragma once

#include <cstdint>

namespace dynbcast {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform value in [0, bound) by rejection; bound must be positive.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// True with probability p, using the top 53 bits as a uniform in [0, 1).
  constexpr bool bernoulli(double p) noexcept {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return u < p;
  }

 private:
  std::uint64_t state_;
};

constexpr SplitMix64 keyed_stream(std::uint64_t seed, std::uint64_t salt, std::uint64_t t,
                                  std::uint64_t n) noexcept {
  std::uint64_t key = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  key = mix64(key ^ salt);
  key = mix64(key ^ t);
  key = mix64(key ^ n);
  return SplitMix64(key);
}

}  // namespace dynbcast
