#include <rwre/walk/rescaled.hpp>

#include <stdexcept>

namespace rwre::walk {

const char* to_string(ExitLabel l) {
  switch (l) {
    case ExitLabel::Front: return "front";
    case ExitLabel::Back: return "back";
    case ExitLabel::Side: return "side";
  }
  return "?";
}

RescaledTrajectory rescale_trajectory(const TrajectoryOutcome& outcome,
                                      const geom::BoxFamily& family) {
  if (!outcome.path_complete) {
    throw std::invalid_argument("rescale_trajectory: requires a fully recorded path");
  }
  RescaledTrajectory r;
  r.level = family.level();
  if (outcome.path.empty()) {
    r.censored_tail = true;
    return r;
  }
  r.y.push_back(outcome.path.front());

  std::size_t pos = 0;
  for (;;) {
    const Site anchor = family.assign(r.y.back());
    const geom::Box box = family.box_at(anchor);
    std::size_t exit_pos = pos;
    bool exited = false;
    for (std::size_t i = pos; i < outcome.path.size(); ++i) {
      if (!box.contains(outcome.path[i])) {
        exit_pos = i;
        exited = true;
        break;
      }
    }
    if (!exited) {
      r.censored_tail = true;
      break;
    }
    const geom::PointClass c = box.classify(outcome.path[exit_pos]);
    ExitLabel label;
    switch (c) {
      case geom::PointClass::FrontBoundary: label = ExitLabel::Front; break;
      case geom::PointClass::BackBoundary: label = ExitLabel::Back; break;
      case geom::PointClass::SideBoundary: label = ExitLabel::Side; break;
      default:
        throw std::logic_error("rescale_trajectory: exit site not on the box boundary");
    }
    r.tau.push_back(exit_pos);
    r.y.push_back(outcome.path[exit_pos]);
    r.labels.push_back(label);
    pos = exit_pos;
    if (pos + 1 >= outcome.path.size()) break;
  }
  return r;
}

std::size_t count_frontal_run(const RescaledTrajectory& rescaled) {
  std::size_t n = 0;
  for (ExitLabel l : rescaled.labels) {
    if (l != ExitLabel::Front) break;
    ++n;
  }
  return n;
}

}  // namespace rwre::walk
