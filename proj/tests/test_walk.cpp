#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include <rwre/walk/rescaled.hpp>
#include <rwre/walk/simulate.hpp>

#include <cmath>

using namespace rwre;
using namespace rwre::walk;

namespace {

Site site1(std::int64_t a) {
  Site s(1);
  s << a;
  return s;
}

env::EnvironmentLaw deterministic_right_1d() { return env::constant_1d(1.0); }

}  // namespace

TEST_CASE("deterministic walk stops at the directional entrance time") {
  const env::Environment e(deterministic_right_1d(), 1);
  Vec l(1);
  l << 1.0;
  const StoppingSpec spec = StoppingSpec::enter_half_space(l, 5.0);
  rng::Stream stream = trajectory_stream(1, 0);
  const TrajectoryOutcome out = simulate_until(e, site1(0), spec, stream);
  CHECK(out.steps == 6);  // first n with X_n > 5
  CHECK(out.final()[0] == 6);
  CHECK(!out.censored);
  CHECK(out.path.size() == 7);
}

TEST_CASE("same seed gives byte-identical paths") {
  const env::EnvironmentLaw law = env::constant_1d(0.6);
  const env::Environment e(law, 5);
  const StoppingSpec spec = StoppingSpec::first_of(
      {StoppingSpec::enter_points({site1(-8)}), StoppingSpec::enter_points({site1(8)}),
       StoppingSpec::step_cap(100000)});
  rng::Stream s1 = trajectory_stream(77, 3), s2 = trajectory_stream(77, 3);
  const TrajectoryOutcome a = simulate_until(e, site1(0), spec, s1);
  const TrajectoryOutcome b = simulate_until(e, site1(0), spec, s2);
  REQUIRE(a.path.size() == b.path.size());
  for (std::size_t i = 0; i < a.path.size(); ++i) CHECK(site_equal(a.path[i], b.path[i]));
  CHECK(a.stop_index == b.stop_index);
}

TEST_CASE("symmetric walk hits +3 before -3 about half the time") {
  const env::EnvironmentLaw law = env::constant_1d(0.5);
  const env::Environment e(law, 9);
  const StoppingSpec spec = StoppingSpec::first_of(
      {StoppingSpec::enter_points({site1(-3)}), StoppingSpec::enter_points({site1(3)}),
       StoppingSpec::step_cap(1000000)});
  const int n = 20000;
  int plus = 0;
  for (int t = 0; t < n; ++t) {
    rng::Stream stream = trajectory_stream(1234, static_cast<std::uint64_t>(t));
    const TrajectoryOutcome out = simulate_until(e, site1(0), spec, stream, {.record_path = false});
    REQUIRE(!out.censored);
    if (out.stop_index == 1) ++plus;
  }
  const double f = static_cast<double>(plus) / n;
  CHECK(std::abs(f - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("paths are nearest-neighbour and stop exactly at the first firing") {
  const env::EnvironmentLaw law = env::two_point_1d(0.8, 0.45);
  const StoppingSpec spec = StoppingSpec::first_of(
      {StoppingSpec::enter_points({site1(-5)}), StoppingSpec::enter_points({site1(7)}),
       StoppingSpec::step_cap(5000)});
  for (int t = 0; t < 100; ++t) {
    const env::Environment e(law, rng::mix(10, static_cast<std::uint64_t>(t)));
    rng::Stream stream = trajectory_stream(10, static_cast<std::uint64_t>(t));
    const TrajectoryOutcome out = simulate_until(e, site1(0), spec, stream);
    for (std::size_t i = 1; i < out.path.size(); ++i) {
      CHECK((out.path[i] - out.path[i - 1]).cwiseAbs().sum() == 1);
    }
    // Independent re-scan: no earlier index fires, and the last one does.
    for (std::size_t i = 0; i + 1 < out.path.size(); ++i) {
      CHECK(spec.fired(out.path[i], i) == -1);
    }
    CHECK(spec.fired(out.path.back(), out.steps) == out.stop_index);
  }
}

TEST_CASE("one-step frequencies at a fixed site pass a chi-squared test") {
  env::PerturbedSRWLaw p;
  p.drift.resize(2);
  p.drift << 0.1, -0.05;
  p.epsilon = 0.1;
  const env::EnvironmentLaw law{p};
  const env::Environment e(law, 2718);
  Site x(2);
  x << 4, -9;
  const env::TransitionKernel k = e.kernel_at(x);

  const int n = 100000;
  std::array<int, 4> counts{};
  rng::Stream stream(999);
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(k.sample(stream.next_u01()))];

  double chi2 = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double expect = n * k.w[j];
    chi2 += (counts[static_cast<std::size_t>(j)] - expect) * (counts[static_cast<std::size_t>(j)] - expect) / expect;
  }
  CHECK(chi2 < 16.266);  // chi2(3) quantile at p = 0.999
}

TEST_CASE("rescaled walk of the deterministic-right environment") {
  const env::Environment e(deterministic_right_1d(), 3);
  Vec l(1);
  l << 1.0;
  rng::Stream stream = trajectory_stream(3, 0);
  const TrajectoryOutcome out =
      simulate_until(e, site1(0), StoppingSpec::enter_half_space(l, 40.0), stream);

  const geom::BoxFamily family(geom::axis_frame(1), geom::ScaleSchedule(12), 0);
  const RescaledTrajectory r = rescale_trajectory(out, family);
  REQUIRE(r.exits() >= 3);
  // First box is B(-6, 0) = (-12, 6); the walk leaves it at site 6 frontally.
  CHECK(r.y[0][0] == 0);
  CHECK(r.y[1][0] == 6);
  CHECK(r.y[2][0] == 12);
  for (const ExitLabel lab : r.labels) CHECK(lab == ExitLabel::Front);
  CHECK(count_frontal_run(r) == r.exits());
}

TEST_CASE("censored before first exit yields an empty rescaled sequence") {
  const env::Environment e(deterministic_right_1d(), 3);
  rng::Stream stream = trajectory_stream(3, 1);
  const TrajectoryOutcome out =
      simulate_until(e, site1(0), StoppingSpec::step_cap(3), stream);
  const geom::BoxFamily family(geom::axis_frame(1), geom::ScaleSchedule(12), 0);
  const RescaledTrajectory r = rescale_trajectory(out, family);
  CHECK(r.exits() == 0);
  CHECK(r.censored_tail);
}

TEST_CASE("rescaled labels agree with box classification and the front gain") {
  const env::EnvironmentLaw law = env::constant_1d(0.6);
  const geom::BoxFamily family(geom::axis_frame(1), geom::ScaleSchedule(12), 0);
  for (int t = 0; t < 50; ++t) {
    const env::Environment e(law, rng::mix(21, static_cast<std::uint64_t>(t)));
    rng::Stream stream = trajectory_stream(21, static_cast<std::uint64_t>(t));
    const TrajectoryOutcome out =
        simulate_until(e, site1(0), StoppingSpec::step_cap(3000), stream);
    const RescaledTrajectory r = rescale_trajectory(out, family);
    for (std::size_t n = 0; n < r.exits(); ++n) {
      const Site anchor = family.assign(r.y[n]);
      const geom::Box box = family.box_at(anchor);
      const geom::PointClass c = box.classify(r.y[n + 1]);
      switch (r.labels[n]) {
        case ExitLabel::Front:
          CHECK(c == geom::PointClass::FrontBoundary);
          // A frontal exit advances past the box front: (Y - anchor) . l >= N_k.
          CHECK(static_cast<double>(r.y[n + 1][0] - anchor[0]) >= 12.0);
          break;
        case ExitLabel::Back:
          CHECK(c == geom::PointClass::BackBoundary);
          break;
        case ExitLabel::Side:
          CHECK(c == geom::PointClass::SideBoundary);
          break;
      }
      CHECK(r.tau[n] > (n == 0 ? 0u : r.tau[n - 1]));
    }
  }
}

TEST_CASE("rescaling works in d = 2 with desk overrides") {
  env::PerturbedSRWLaw p;
  p.drift.resize(2);
  p.drift << 0.3, 0.0;
  p.epsilon = 0.1;
  const env::EnvironmentLaw law{p};
  const env::Environment e(law, 606);
  geom::BoxOverrides ov;
  ov.width = 12;
  ov.frontal_width = 6;
  const geom::BoxFamily family(geom::axis_frame(2), geom::ScaleSchedule(12), 0, ov);

  Vec l(2);
  l << 1.0, 0.0;
  rng::Stream stream = trajectory_stream(606, 0);
  Site start(2);
  start << 0, 0;
  const TrajectoryOutcome out = simulate_until(
      e, start,
      StoppingSpec::first_of({StoppingSpec::enter_half_space(l, 100.0), StoppingSpec::step_cap(200000)}),
      stream);
  const RescaledTrajectory r = rescale_trajectory(out, family);
  CHECK(r.exits() >= 1);
  for (std::size_t n = 0; n < r.exits(); ++n) {
    const geom::Box box = family.box_at(family.assign(r.y[n]));
    CHECK(box.on_boundary(r.y[n + 1]));
  }
}

TEST_CASE("count_frontal_run counts the prefix only") {
  RescaledTrajectory r;
  r.labels = {ExitLabel::Front, ExitLabel::Front, ExitLabel::Back, ExitLabel::Front};
  CHECK(count_frontal_run(r) == 2);
  r.labels = {};
  CHECK(count_frontal_run(r) == 0);
  r.labels = {ExitLabel::Back, ExitLabel::Front};
  CHECK(count_frontal_run(r) == 0);
  r.labels.assign(17, ExitLabel::Front);
  CHECK(count_frontal_run(r) == 17);
}

TEST_CASE("shifted path views suffixes") {
  const env::Environment e(deterministic_right_1d(), 3);
  rng::Stream stream = trajectory_stream(3, 0);
  const TrajectoryOutcome out = simulate_until(e, site1(0), StoppingSpec::step_cap(5), stream);
  const auto tail = out.shifted(2);
  REQUIRE(tail.size() == out.path.size() - 2);
  CHECK(tail.front()[0] == 2);
  CHECK(out.shifted(100).empty());
}

TEST_CASE("stopping spec validation") {
  CHECK_THROWS_AS(StoppingSpec::step_cap(0), std::invalid_argument);
  CHECK_THROWS_AS(StoppingSpec::first_of({}), std::invalid_argument);
}
