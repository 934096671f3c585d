#pragma once

#include <rwre/geometry/lattice.hpp>
#include <rwre/walk/simulate.hpp>

#include <vector>

namespace rwre::walk {

enum class ExitLabel { Front, Back, Side };

const char* to_string(ExitLabel l);

/// The walk observed only at successive box-exit times: tau_{n+1} is the exit
/// time of the scale-k box assigned (deterministic tie-break) to Y_n, and the
/// label records the boundary part through which that box was left.
struct RescaledTrajectory {
  int level = 0;
  std::vector<std::size_t> tau;  // path indices of the exits, strictly increasing
  std::vector<Site> y;           // y[0] = start, y[n] = path[tau[n-1] ... ]
  std::vector<ExitLabel> labels; // labels[n] labels the step y[n] -> y[n+1]
  bool censored_tail = false;    // trajectory ended inside a box

  std::size_t exits() const { return tau.size(); }
};

/// Requires a fully recorded path. A trajectory censored before its first box
/// exit yields an empty rescaled sequence with the censored flag set.
RescaledTrajectory rescale_trajectory(const TrajectoryOutcome& outcome,
                                      const geom::BoxFamily& family);

/// Length of the longest prefix of consecutive Front labels.
std::size_t count_frontal_run(const RescaledTrajectory& rescaled);

}  // namespace rwre::walk
