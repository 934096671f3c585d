#pragma once

#include <rwre/environment/law.hpp>
#include <rwre/geometry/regions.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <vector>

namespace rwre::cond {

struct DecayPoint {
  double L = 0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;      // backtrack events (censored runs included)
  std::uint64_t censored = 0;
  double estimate = 0;
  double ci_lo = 0, ci_hi = 1;
};

struct DecayCurve {
  Vec l_prime;
  double b = 0;
  std::vector<DecayPoint> points;
  // Least-squares fits over points with nonzero estimates:
  //   ln p = intercept - poly_slope * ln L
  //   ln(-ln p) = intercept + stretched_exponent * ln L
  double poly_slope = 0;
  double stretched_exponent = 0;
  int fit_points = 0;

  nlohmann::json to_json() const;
};

/// Backtracking probability P_0(advance past bL against l' before advancing
/// past L along l') per L, with Wilson intervals, plus fitted polynomial and
/// stretched exponents. Zero-hit cells are reported as "< 1/trials" through
/// the rule-of-three upper bound and excluded from the fits.
DecayCurve decay_curve(const env::EnvironmentLaw& law, const Vec& l_prime, double b,
                       const std::vector<double>& L_list, std::uint64_t trials,
                       std::uint64_t seed, std::uint64_t step_cap = 1'000'000, int threads = 1);

struct SlabDecayReport {
  double L = 0;
  std::uint64_t trials = 0;
  std::uint64_t nonfrontal = 0;
  std::uint64_t censored = 0;
  double estimate = 0;
  double ci_lo = 0, ci_hi = 1;
  double gamma_hat = 0;     // ln(-ln p_hat)/ln L (0 when degenerate)
  double gamma_target = 0;  // ln 2 / lnln L

  nlohmann::json to_json() const;
};

/// Averaged probability of leaving the wide slab other than through its
/// frontal boundary, with the effective-exponent comparison.
SlabDecayReport slab_decay(const env::EnvironmentLaw& law, const geom::DirectionFrame& frame,
                           double L, std::uint64_t trials, std::uint64_t seed,
                           std::uint64_t step_cap = 1'000'000, int threads = 1);

}  // namespace rwre::cond
