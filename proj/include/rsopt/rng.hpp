#pragma once

#include <cmath>
#include <cstdint>

namespace rsopt {

/// Counter-based pseudo-random source. Output n of stream (seed, stream) is
/// mix(key + n*gamma), so draws depend only on (seed, stream, n) -- never on
/// how many other streams exist or on global state. That makes replication k
/// reproducible regardless of replication count or thread schedule.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed ^ 0x2545f4914f6cdd1dULL) ^ mix(stream))) {}

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be >= 1.
  std::uint64_t uniform_below(std::uint64_t n) {
    // 64-bit multiply-shift; bias is < 2^-64 * n, irrelevant at our n.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Standard normal via Box-Muller (two uniforms per pair, cached).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
  }

  /// Exponential with the given rate (> 0).
  double exponential(double rate) {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return -std::log(u) / rate;
  }

  /// A statistically independent child stream; `salt` distinguishes siblings.
  RandomSource derive(std::uint64_t salt) const {
    RandomSource child(0);
    child.key_ = mix(key_ ^ mix(salt + 0x6a09e667f3bcc909ULL));
    child.counter_ = 0;
    return child;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  // SplitMix64 finalizer (Stafford's Mix13).
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace rsopt
