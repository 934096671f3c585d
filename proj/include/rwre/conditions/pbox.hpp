#pragma once

#include <rwre/environment/law.hpp>
#include <rwre/geometry/lattice.hpp>
#include <rwre/solver/exit.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <vector>

namespace rwre::cond {

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v);

struct StartEstimate {
  Site start;
  double estimate = 0;
  double ci_lo = 0, ci_hi = 1;
  bool exact = false;
  std::uint64_t trials = 0;
  std::uint64_t censored = 0;
};

struct NonfrontalOptions {
  enum class Mode { Auto, Exact, MonteCarlo };
  Mode mode = Mode::Auto;
  std::uint64_t trials = 20000;      // Monte Carlo walks per start
  std::uint64_t env_trials = 200;    // environments averaged in exact mode
  std::uint64_t step_cap = 1'000'000;
  int threads = 1;
  solver::SolveOptions solve;
};

/// Averaged probability of leaving the box other than through its frontal
/// boundary part, estimated per start. Exact mode solves the quenched field
/// per sampled environment and averages (one field solve covers every start);
/// Monte Carlo samples (environment, walk) pairs and counts censored runs as
/// non-frontal, the conservative direction for an upper-bound check.
std::vector<StartEstimate> estimate_nonfrontal_annealed(const env::EnvironmentLaw& law,
                                                        const geom::Box& box,
                                                        const std::vector<Site>& starts,
                                                        std::uint64_t seed,
                                                        const NonfrontalOptions& options = {});

struct PboxBudget {
  std::uint64_t max_starts = 512;  // full middle frontal part if it fits
  NonfrontalOptions nonfrontal;
  geom::BoxOverrides overrides;
};

struct PboxVerdict {
  std::int64_t N0 = 0;
  double M = 0;
  std::vector<StartEstimate> starts;
  std::uint64_t starts_total = 0;  // |Btilde_0|
  bool partial = false;            // evaluated a subgrid: sup is a lower bound
  double sup_estimate = 0;
  double sup_ci_lo = 0, sup_ci_hi = 1;
  double threshold = 0;  // N0^{-M}
  Verdict verdict = Verdict::Inconclusive;
  nlohmann::json to_json() const;
};

/// Finite-box polynomial condition check: sup over middle-frontal starts of
/// the averaged non-frontal exit probability against N0^{-M}. When the start
/// set exceeds the budget a deterministic subgrid plus the extremal corners is
/// used and the verdict is flagged partial (sound for Fail, partial for Pass).
PboxVerdict check_pbox(const env::EnvironmentLaw& law, std::int64_t N0, double M,
                       const geom::DirectionFrame& frame, std::uint64_t seed,
                       const PboxBudget& budget = {});

}  // namespace rwre::cond
