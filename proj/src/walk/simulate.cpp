#include <rwre/walk/simulate.hpp>

namespace rwre::walk {

TrajectoryOutcome simulate_until(const env::Environment& environment, const Site& start,
                                 const StoppingSpec& spec, rng::Stream& stream,
                                 const SimulateOptions& options) {
  TrajectoryOutcome out;
  const int d = environment.d();
  Site x = start;
  if (options.record_path) out.path.push_back(x);

  for (;;) {
    const int fired = spec.fired(x, out.steps);
    if (fired >= 0) {
      out.stop_index = fired;
      out.censored = spec.is_cap(fired);
      break;
    }
    const env::TransitionKernel k = environment.kernel_at(x);
    x += step_for_index(d, k.sample(stream.next_u01()));
    ++out.steps;
    if (options.record_path) out.path.push_back(x);
  }

  if (!options.record_path) {
    out.path = {start, x};
    out.path_complete = (out.steps == 0) || (out.steps == 1);
  }
  return out;
}

rng::Stream trajectory_stream(std::uint64_t master_seed, std::uint64_t index) {
  return rng::Stream(rng::mix(rng::mix(master_seed, 0x57414c4bu), index));
}

}  // namespace rwre::walk
