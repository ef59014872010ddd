#include "requisite/rng.hpp"

#include <cmath>

namespace requisite {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::string_view label) {
  std::uint64_t state = mix64(seed) ^ fnv1a64(label);
  for (auto& word : s_) {
    state += 0x9e3779b97f4a7c15ULL;
    word = mix64(state);
  }
}

std::uint64_t RandomStream::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double RandomStream::open_uniform() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  // reject the low (2^64 mod bound) values so every residue is equally likely
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

bool RandomStream::bernoulli(double p) {
  const double u = uniform();
  return u < p;
}

double RandomStream::exponential(double mean) { return -mean * std::log(open_uniform()); }

}  // namespace requisite
