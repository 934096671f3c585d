#pragma once

#include <rwre/environment/environment.hpp>
#include <rwre/geometry/lattice.hpp>
#include <rwre/solver/exit.hpp>
#include <rwre/stats.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace rwre::cond {

struct GoodnessCertificate {
  Site anchor;
  int level = 0;
  bool good = false;
  double threshold = 0;       // 1 - N0^{-5}
  double attained_inf = 0;    // level 0: inf over middle-frontal starts
  std::optional<Site> witness;     // level >= 1: the covering sub-box anchor
  std::vector<Site> bad_subboxes;  // level >= 1: bad sub-boxes found

  nlohmann::json to_json() const;
};

/// Combinatorial core of the recursive classification: a witness candidate
/// index such that every bad index intersects it, or nullopt. With no bad
/// boxes any candidate works and the first is returned. Candidates that miss
/// bad[0] are skipped (any valid witness must meet every bad box).
std::optional<int> find_goodness_witness(int num_candidates, const std::vector<int>& bad,
                                         const std::function<bool(int, int)>& intersects);

/// Recursive good/bad classification with memoized sub-box verdicts:
/// level 0 boxes are good when the quenched frontal-exit probability is at
/// least 1 - N0^{-5} from every middle-frontal start (one field solve);
/// level k >= 1 boxes are good when some sub-box anchor intersects every bad
/// sub-box among those meeting the box.
class GoodnessClassifier {
 public:
  GoodnessClassifier(env::Environment environment, geom::DirectionFrame frame,
                     geom::ScaleSchedule schedule, geom::BoxOverrides overrides = {},
                     solver::SolveOptions solve = {}, std::uint64_t budget = 100000);

  GoodnessCertificate classify(const Site& anchor, int level);

  std::uint64_t solves_used() const { return solves_used_; }

 private:
  env::Environment environment_;
  geom::DirectionFrame frame_;
  geom::ScaleSchedule schedule_;
  geom::BoxOverrides overrides_;
  solver::SolveOptions solve_;
  std::uint64_t budget_;
  std::uint64_t solves_used_ = 0;
  std::map<std::pair<int, std::vector<std::int64_t>>, GoodnessCertificate> memo_;
};

struct GoodnessExperiment {
  int k = 0;
  std::int64_t N0 = 0;
  std::uint64_t env_trials = 0;
  std::uint64_t good = 0;
  double p_hat = 0;
  double ci_lo = 0, ci_hi = 1;
  double bound = 0;  // 1 - exp(-2^k)

  // Level-0 consistency numbers (union bound and the per-start chain):
  double union_rhs_mean = 0;   // mean over environments of sum_x 1{nonfrontal >= N0^{-5}}
  bool union_bound_ok = true;  // 1 - p_hat <= union_rhs_mean on the same samples
  double chain_rhs = 0;        // 1 - |Btilde| N0^5 sup_x (averaged nonfrontal)

  nlohmann::json to_json() const;
};

/// Empirical good-box probability at desk scale versus the doubly-exponential
/// target, including the union-bound consistency check at level 0.
GoodnessExperiment goodness_experiment(const env::EnvironmentLaw& law, int k, std::int64_t N0,
                                       std::uint64_t env_trials, std::uint64_t seed,
                                       const geom::DirectionFrame& frame,
                                       geom::BoxOverrides overrides = {}, int threads = 1,
                                       const solver::SolveOptions& solve = {});

}  // namespace rwre::cond
