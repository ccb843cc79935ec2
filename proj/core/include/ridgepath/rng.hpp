#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ridgepath {

/// Seeded random stream with a pinned draw contract.
///
/// All downstream randomness (sketches, synthetic data, splits) is derived
/// from this class so that a seed fully determines every realized matrix,
/// independent of the standard library's distribution implementations.
/// The raw generator is std::mt19937_64, whose output sequence is fixed by
/// the C++ standard; uniform, integer and Gaussian draws are built on top
/// of it with explicit formulas.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in (0, 1], 53-bit resolution.
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). Rejection sampling, so the result is
  /// unbiased and platform-independent.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = n * (~std::uint64_t{0} / n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

  /// Rademacher draw: +1 or -1 with equal probability.
  double sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    cached_ = r * std::sin(two_pi * u2);
    have_cached_ = true;
    return r * std::cos(two_pi * u2);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace ridgepath
