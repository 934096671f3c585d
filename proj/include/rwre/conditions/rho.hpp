#pragma once

#include <rwre/conditions/schedule.hpp>
#include <rwre/environment/law.hpp>
#include <rwre/geometry/regions.hpp>
#include <rwre/solver/exit.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <vector>

namespace rwre::cond {

/// One sampled environment's contribution to E[rho^a]: the quenched frontal
/// exit probability of the box from the origin, and rho = (1-p)/p.
struct RhoSample {
  double p_front = 0;
  double log_p_front = 0;
  double rho = 0;
  double rho_pow_a = 0;
};

enum class RhoMode { ExactPerEnv, McPerEnv };

struct RhoMomentResult {
  double a = 0;
  std::uint64_t env_trials = 0;
  bool exact_per_env = false;
  double mean = 0;
  double ci_lo = 0, ci_hi = 0;
  std::vector<RhoSample> samples;
  nlohmann::json box;

  nlohmann::json to_json() const;
};

/// E[rho_B^a] over sampled environments. Exact mode solves the quenched field
/// per environment; Monte Carlo mode estimates the frontal probability from
/// walks within each environment. A zero frontal probability (rho = infinity)
/// cannot occur under a uniform ellipticity floor and raises NumericalError.
RhoMomentResult rho_moment(const env::EnvironmentLaw& law, const geom::BoxSpecification& box,
                           double a, std::uint64_t env_trials, RhoMode mode, std::uint64_t seed,
                           std::uint64_t mc_walks_per_env = 20000, int threads = 1,
                           const solver::SolveOptions& solve = {});

/// Split of the empirical E[rho^a] by the quenched frontal probability bins
/// (1/2) exp{-c1 L^{beta_j}}. The bin sums add up to `total` exactly (they
/// partition the sample set); `total` equals the plain sample mean.
struct RhoDecomposition {
  double e0 = 0;
  std::vector<double> ej;  // j = 1..n-1
  double en = 0;
  double total = 0;
  std::vector<std::uint64_t> counts;  // bin occupancy, index 0..n

  nlohmann::json to_json() const;
};

/// Asserts the uniform-ellipticity floor log p_front > -c1 L per sample
/// (throws NumericalError on violation); the top bin is empirically zero
/// whenever the floor holds with the schedule's kappa.
RhoDecomposition rho_decomposition(const std::vector<RhoSample>& samples,
                                   const ParameterSchedule& schedule);

/// The scalar multiplier of E[rho^a] in the criterion:
/// c3 (ln 1/kappa)^{3(d-1)} Ltilde^{d-1} L^{3(d-1)+1}.
double criterion_factor(int d, double kappa, double L, double l_tilde, double c3);

struct EffectiveCriterionCell {
  double L = 0;
  double l_tilde = 0;
  double a = 0;
  double rho_mean = 0;
  double rho_hi = 0;
  double value = 0;
  double value_hi = 0;
  std::uint64_t env_trials = 0;
};

struct EffectiveCriterionReport {
  int d = 0;
  double kappa = 0;
  double c3 = 1.0;
  double c2 = 0;  // unenforced; echoed from configuration
  std::vector<EffectiveCriterionCell> cells;
  double min_value = 0;
  double min_value_hi = 0;
  bool satisfied = false;  // min upper-CI < 1

  nlohmann::json to_json() const;
};

/// Minimizes c3 (ln 1/kappa)^{3(d-1)} Ltilde^{d-1} L^{3(d-1)+1} E[rho^a] over
/// the (L, a) grid; satisfied iff the minimal upper confidence value is < 1.
/// `l_tilde` pairs with `L_grid` entrywise (desk overrides allowed, flagged
/// nonconforming in the box descriptions).
EffectiveCriterionReport effective_criterion(const env::EnvironmentLaw& law,
                                             const geom::DirectionFrame& frame,
                                             const std::vector<double>& L_grid,
                                             const std::vector<double>& l_tilde,
                                             const std::vector<double>& a_grid, double c3,
                                             std::uint64_t env_trials, RhoMode mode,
                                             std::uint64_t seed, int threads = 1,
                                             double c2 = 0,
                                             const solver::SolveOptions& solve = {});

}  // namespace rwre::cond
