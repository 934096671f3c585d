#pragma once

#include <rwre/conditions/schedule.hpp>
#include <rwre/environment/law.hpp>
#include <rwre/geometry/regions.hpp>
#include <rwre/solver/exit.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>

namespace rwre::cond {

struct QuenchedTailReport {
  double L = 0;
  double beta = 0;
  double threshold_log = 0;  // ln[(1/2) exp{-c1 L^beta}]
  std::uint64_t env_trials = 0;
  std::uint64_t below = 0;
  double empirical = 0;
  double ci_lo = 0, ci_hi = 1;
  double bound_log = 0;  // ln[5^d e / ceil(L^{beta-eps}/5^d)!]
  double bound = 0;
  bool vacuous = false;  // bound >= 1
  nlohmann::json box;

  nlohmann::json to_json() const;
};

/// Empirical tail of the quenched frontal-exit probability versus the
/// factorial bound 5^d e / ceil(L^{beta-eps(L)}/5^d)!. Each sampled
/// environment is solved exactly; comparisons run in log space. beta may be
/// any positive value (the ceiling keeps the bound well-defined). The law
/// must carry an ellipticity constant, or `kappa_override` must supply the
/// nominal one entering c_1.
QuenchedTailReport quenched_tail_experiment(const env::EnvironmentLaw& law,
                                            const geom::DirectionFrame& frame, double L,
                                            double beta, std::uint64_t env_trials,
                                            std::uint64_t seed,
                                            std::optional<double> l_tilde_override = {},
                                            int threads = 1,
                                            const solver::SolveOptions& solve = {},
                                            std::optional<double> kappa_override = {});

struct BinomialBound {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  double exact = 0;  // P(Y_n >= k), Y_n ~ Bin(n, 1/n), summed in log space
  double bound = 0;  // e / k!
};

/// Exact binomial tail against e/k!; exact <= bound for all 0 <= k <= n.
BinomialBound binomial_tail(std::uint64_t n, std::uint64_t k);

}  // namespace rwre::cond
