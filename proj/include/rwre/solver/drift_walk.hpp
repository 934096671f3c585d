#pragma once

#include <rwre/solver/exit.hpp>

#include <cstdint>
#include <optional>
#include <utility>

namespace rwre::solver {

/// One-dimensional walk with asymmetric jump sizes and a band of modified
/// drift: outside [band_lo, band_hi] it jumps +right_step with probability
/// right_prob_out (else -left_step); inside the band the right probability is
/// right_prob_in.
struct DriftWalkSpec {
  std::int64_t right_step = 1;
  std::int64_t left_step = 1;
  double right_prob_out = 0.5;
  std::optional<std::pair<std::int64_t, std::int64_t>> band;  // inclusive
  double right_prob_in = 0.5;

  double right_prob_at(std::int64_t x) const {
    if (band && x >= band->first && x <= band->second) return right_prob_in;
    return right_prob_out;
  }
};

/// Exact probability of right absorption: states are the integers strictly
/// between the thresholds, any jump landing at or beyond a threshold is
/// absorbed into that side (overshoot states collapse into the threshold's
/// part). An optional taboo state absorbs with value 0, which supports
/// return-time event computations by first-step decomposition.
double drift_walk_hitting(const DriftWalkSpec& spec, std::int64_t start, std::int64_t left_absorb,
                          std::int64_t right_absorb, std::optional<std::int64_t> taboo = {},
                          const SolveOptions& options = {});

}  // namespace rwre::solver
