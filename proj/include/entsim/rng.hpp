#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace entsim {

/// One SplitMix64 step: advances `state` and returns a mixed 64-bit word.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic random stream. Distributions are generated from raw 64-bit
/// words of a mt19937_64, so sequences are identical on every platform for a
/// given seed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(mix(seed)) {}

  /// Stream for worker `index` under `master`: the pair is mixed through
  /// SplitMix64 so that nearby indices give decorrelated streams.
  static RandomStream substream(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ ((index + 1) * 0x9e3779b97f4a7c15ull);
    return RandomStream(splitmix64_next(s));
  }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; generates pairs, second value cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  /// Complex normal: independent standard normal real and imaginary parts.
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  std::uint64_t raw() { return gen_(); }

 private:
  static std::uint64_t mix(std::uint64_t seed) {
    return splitmix64_next(seed);
  }

  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace entsim
