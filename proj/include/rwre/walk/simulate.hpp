#pragma once

#include <rwre/environment/environment.hpp>
#include <rwre/rng.hpp>
#include <rwre/walk/stopping.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace rwre::walk {

struct TrajectoryOutcome {
  std::vector<Site> path;      // full path, or {start, final} when not recorded
  bool path_complete = true;   // whether `path` holds every visited site
  int stop_index = -1;         // which rule fired
  std::uint64_t steps = 0;
  bool censored = false;       // true iff only a StepCap fired

  const Site& start() const { return path.front(); }
  const Site& final() const { return path.back(); }

  /// Left shift by k steps as a view of the stored path.
  std::span<const Site> shifted(std::size_t k) const {
    return std::span<const Site>(path).subspan(std::min(k, path.size()));
  }
};

struct SimulateOptions {
  bool record_path = true;
};

/// One quenched trajectory from `start`, stopped at the first firing rule.
/// The walk stream should be derived from (master_seed, trajectory index) so
/// results are independent of worker count and scheduling.
TrajectoryOutcome simulate_until(const env::Environment& environment, const Site& start,
                                 const StoppingSpec& spec, rng::Stream& stream,
                                 const SimulateOptions& options = {});

/// Stream key for trajectory `index` under `master_seed`.
rng::Stream trajectory_stream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace rwre::walk
