#pragma once

#include <rwre/types.hpp>

#include <cmath>
#include <cstdint>

namespace rwre::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ (splitmix64(v) + (h << 6) + (h >> 2)));
}

/// Key for the per-site randomness: a pure function of (seed, salt, coords).
/// Two environments with equal (seed, law) agree at every site regardless of
/// query order, which is the whole point of keying on the site instead of
/// drawing from a sequential stream.
inline std::uint64_t site_key(std::uint64_t seed, std::uint64_t salt, const Site& x) {
  std::uint64_t h = mix(seed, salt);
  for (Eigen::Index i = 0; i < x.size(); ++i) h = mix(h, static_cast<std::uint64_t>(x[i]));
  return h;
}

/// Counter-based generator: value i depends only on (key, i). Streams derived
/// from distinct keys are independent for all practical purposes.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return splitmix64(key_ + (++counter_) * kGolden); }

  /// Uniform in [0,1) with 53 random bits.
  double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0,1); never returns an exact endpoint.
  double next_open01() {
    double u = next_u01();
    if (u <= 0.0) u = 0x1.0p-53;
    return u;
  }

  /// Standard normal via Box-Muller (pair cached in the stream state).
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_open01();
    double u2 = next_u01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Gamma(alpha, 1) via Marsaglia-Tsang; alpha < 1 boosted through
  /// Gamma(alpha+1) * U^{1/alpha}. Self-contained so results do not depend on
  /// a standard-library distribution implementation.
  double next_gamma(double alpha) {
    if (alpha < 1.0) {
      double u = next_open01();
      return next_gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = next_normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = next_open01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rwre::rng
