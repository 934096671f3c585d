#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rwre::stats {

/// z for the two-sided 99% normal interval.
inline constexpr double kZ99 = 2.5758293035489004;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool covers(double v) const { return lo <= v && v <= hi; }
};

/// Wilson score interval at 99%. Zero-count (and full-count) cells use the
/// rule-of-three bound 3/n on the empty side.
inline Interval wilson99(std::uint64_t successes, std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  if (successes == 0) return {0.0, std::min(1.0, 3.0 / nn)};
  if (successes == n) return {std::max(0.0, 1.0 - 3.0 / nn), 1.0};
  const double p = static_cast<double>(successes) / nn;
  const double z2 = kZ99 * kZ99;
  const double denom = 1.0 + z2 / nn;
  const double centre = p + z2 / (2.0 * nn);
  const double half = kZ99 * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, (centre - half) / denom), std::min(1.0, (centre + half) / denom)};
}

/// Pairwise (cascade) summation in the order given; deterministic for a fixed
/// ordering regardless of how the values were produced.
inline double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

inline double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return pairwise_sum(xs) / static_cast<double>(xs.size());
}

/// Normal-approximation 99% interval for the mean of bounded samples.
inline Interval mean_ci99(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return {0.0, 0.0};
  const double m = mean(xs);
  if (n == 1) return {m, m};
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (xs[i] - m) * (xs[i] - m);
  const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
  const double half = kZ99 * std::sqrt(var / static_cast<double>(n));
  return {m - half, m + half};
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (x_i, y_i).
inline LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = std::min(xs.size(), ys.size());
  if (n < 2) return {0.0, n == 1 ? ys[0] : 0.0};
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  LineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  return f;
}

}  // namespace rwre::stats
