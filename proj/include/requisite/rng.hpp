#pragma once

// Fixed, platform-independent pseudorandom streams.
//
// Every stochastic draw site owns a stream keyed by (seed, label). The
// generator is xoshiro256** whose 256-bit state is filled by SplitMix64
// started from mix64(seed) ^ fnv1a64(label). Distributions are implemented
// here rather than taken from <random>, whose distribution algorithms are
// implementation-defined.

#include <cstdint>
#include <string_view>

namespace requisite {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::string_view label);

  std::uint64_t next();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on the open interval (0, 1).
  double open_uniform();
  /// Uniform integer on [0, bound), bound > 0, without modulo bias.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability p (p <= 0 never, p >= 1 always).
  bool bernoulli(double p);
  /// Exponential with the given mean; strictly positive.
  double exponential(double mean);

 private:
  std::uint64_t s_[4];
};

}  // namespace requisite
