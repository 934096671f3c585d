#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include <rwre/conditions/goodness.hpp>
#include <rwre/conditions/tail.hpp>

#include <cmath>

using namespace rwre;
using namespace rwre::cond;

namespace {

Site site1(std::int64_t a) {
  Site s(1);
  s << a;
  return s;
}

env::EnvironmentLaw drifted(double delta, double eps = 0.2) {
  env::PerturbedSRWLaw p;
  p.drift.resize(1);
  p.drift << delta;
  p.epsilon = eps;
  return env::EnvironmentLaw{p};
}

// Brute force over every candidate, checking every bad box.
std::optional<int> witness_brute_force(int m, const std::vector<int>& bad,
                                       const std::function<bool(int, int)>& intersects) {
  for (int c = 0; c < m; ++c) {
    bool covers = true;
    for (int b : bad) {
      if (!intersects(c, b)) {
        covers = false;
        break;
      }
    }
    if (covers) return c;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("witness search basics") {
  auto never = [](int, int) { return false; };
  auto always = [](int, int) { return true; };
  CHECK(find_goodness_witness(5, {}, never) == 0);  // empty bad set: first anchor
  CHECK(find_goodness_witness(0, {}, never) == std::nullopt);
  CHECK(find_goodness_witness(5, {2}, always) == 0);
  // Two bad boxes that intersect nothing but themselves: no single witness.
  auto self_only = [](int a, int b) { return a == b; };
  CHECK(find_goodness_witness(5, {1, 3}, self_only) == std::nullopt);
}

TEST_CASE("witness search agrees with brute force on randomized instances") {
  oracle::Gen gen(555);
  for (int inst = 0; inst < 100; ++inst) {
    // Synthetic sub-box family: intervals [c_i, c_i + w] with random anchors.
    const int m = static_cast<int>(gen.integer(3, 50));
    std::vector<std::pair<double, double>> iv;
    for (int i = 0; i < m; ++i) {
      const double lo = gen.uniform(0.0, 40.0);
      iv.emplace_back(lo, lo + gen.uniform(1.0, 8.0));
    }
    std::vector<int> bad;
    for (int i = 0; i < m; ++i) {
      if (gen.u01() < 0.25) bad.push_back(i);
    }
    auto intersects = [&](int a, int b) {
      return std::max(iv[a].first, iv[b].first) <= std::min(iv[a].second, iv[b].second);
    };
    const auto fast = find_goodness_witness(m, bad, intersects);
    const auto brute = witness_brute_force(m, bad, intersects);
    CHECK(fast.has_value() == brute.has_value());
    if (fast && brute) {
      // Both witnesses must actually cover every bad box.
      for (int b : bad) {
        CHECK(intersects(*fast, b));
        CHECK(intersects(*brute, b));
      }
    }
  }
}

TEST_CASE("level-0 classification: deterministic-right is good, weak drift is bad") {
  solver::SolveOptions quiet;
  quiet.warn_nonelliptic = false;
  const geom::DirectionFrame f = geom::axis_frame(1);
  const geom::ScaleSchedule sched(12);

  GoodnessClassifier good_env(env::Environment(env::constant_1d(1.0), 1), f, sched, {}, quiet);
  const GoodnessCertificate good = good_env.classify(site1(0), 0);
  CHECK(good.good);
  CHECK(good.attained_inf == doctest::Approx(1.0));
  CHECK(good.threshold == doctest::Approx(1.0 - std::pow(12.0, -5.0)));

  GoodnessClassifier weak_env(env::Environment(env::constant_1d(0.6), 2), f, sched, {}, quiet);
  const GoodnessCertificate weak = weak_env.classify(site1(0), 0);
  CHECK(!weak.good);
  // Worst start x = 4: frontal probability 1 - 0.0166762.
  CHECK(weak.attained_inf == doctest::Approx(1.0 - 0.016676174189).epsilon(1e-9));
}

TEST_CASE("level-1 classification with every sub-box good") {
  solver::SolveOptions quiet;
  quiet.warn_nonelliptic = false;
  const geom::DirectionFrame f = geom::axis_frame(1);
  const geom::ScaleSchedule sched(12);
  GoodnessClassifier classifier(env::Environment(env::constant_1d(1.0), 1), f, sched, {}, quiet,
                                5000);
  const GoodnessCertificate cert = classifier.classify(site1(0), 1);
  CHECK(cert.good);
  CHECK(cert.bad_subboxes.empty());
  REQUIRE(cert.witness.has_value());
  // Empty bad set: the first (lexicographically smallest) candidate anchor.
  const geom::BoxFamily sub(f, sched, 0);
  const auto candidates = sub.anchors_intersecting(geom::Box(site1(0), 1, f, sched));
  CHECK(site_equal(*cert.witness, candidates.front()));
}

TEST_CASE("level-1 classification agrees with brute force on real geometry") {
  solver::SolveOptions quiet;
  quiet.warn_nonelliptic = false;
  const geom::DirectionFrame f = geom::axis_frame(1);
  const geom::ScaleSchedule sched(12);
  const geom::BoxFamily sub(f, sched, 0);
  const geom::Box level1(site1(0), 1, f, sched);
  const auto candidates = sub.anchors_intersecting(level1);

  const env::EnvironmentLaw law = drifted(0.62, 0.25);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    env::Environment environment(law, seed);
    GoodnessClassifier classifier(environment, f, sched, {}, quiet, 10000);
    const GoodnessCertificate cert = classifier.classify(site1(0), 1);

    // Brute force: recompute bad flags by direct level-0 classification, then
    // try every candidate as a witness.
    std::vector<int> bad;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      GoodnessClassifier sub_cls(environment, f, sched, {}, quiet, 10000);
      if (!sub_cls.classify(candidates[i], 0).good) bad.push_back(static_cast<int>(i));
    }
    std::vector<geom::Box> boxes;
    for (const Site& c : candidates) boxes.push_back(sub.box_at(c));
    auto intersects = [&](int a, int b) {
      return geom::boxes_intersect(boxes[static_cast<std::size_t>(a)],
                                   boxes[static_cast<std::size_t>(b)]);
    };
    const auto brute =
        witness_brute_force(static_cast<int>(candidates.size()), bad, intersects);
    CHECK(cert.good == brute.has_value());
    CHECK(cert.bad_subboxes.size() == bad.size());
  }
}

TEST_CASE("goodness experiment: deterministic-right is always good") {
  solver::SolveOptions quiet;
  quiet.warn_nonelliptic = false;
  const GoodnessExperiment exp = goodness_experiment(env::constant_1d(1.0), 0, 12, 50, 1,
                                                     geom::axis_frame(1), {}, 2, quiet);
  CHECK(exp.p_hat == 1.0);
  CHECK(exp.bound == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(exp.union_bound_ok);
}

TEST_CASE("goodness experiment: union bound holds on sampled environments") {
  const GoodnessExperiment exp = goodness_experiment(drifted(0.6), 0, 12, 100, 17,
                                                     geom::axis_frame(1), {}, 4);
  CHECK(exp.union_bound_ok);
  CHECK((1.0 - exp.p_hat) <= exp.union_rhs_mean + 1e-12);
  CHECK(exp.p_hat >= 0.0);
  CHECK(exp.p_hat <= 1.0);
}

TEST_CASE("goodness experiment is monotone in the drift") {
  // Around delta ~ 0.6 the verdict is genuinely random, so the fractions
  // spread; the spec's weaker triple {0.1, 0.2, 0.3} is all-zero at this
  // threshold and stays (trivially) monotone.
  std::vector<double> weak, strong;
  for (double delta : {0.1, 0.2, 0.3}) {
    weak.push_back(
        goodness_experiment(drifted(delta), 0, 12, 40, 23, geom::axis_frame(1), {}, 4).p_hat);
  }
  CHECK(weak[0] <= weak[1] + 1e-12);
  CHECK(weak[1] <= weak[2] + 1e-12);
  for (double delta : {0.45, 0.55, 0.65}) {
    strong.push_back(
        goodness_experiment(drifted(delta, 0.15), 0, 12, 120, 23, geom::axis_frame(1), {}, 4).p_hat);
  }
  CHECK(strong[0] < strong[1]);
  CHECK(strong[1] < strong[2]);
  CHECK(strong[2] > 0.9);
}

TEST_CASE("goodness experiment at level 1 runs the full recursion") {
  solver::SolveOptions quiet;
  quiet.warn_nonelliptic = false;
  const cond::GoodnessExperiment exp = cond::goodness_experiment(
      env::constant_1d(1.0), 1, 12, 3, 1, geom::axis_frame(1), {}, 2, quiet);
  CHECK(exp.p_hat == 1.0);
  CHECK(exp.bound == doctest::Approx(1.0 - std::exp(-2.0)));
}

TEST_CASE("quenched tail: deterministic-right never falls below the threshold") {
  solver::SolveOptions quiet;
  quiet.warn_nonelliptic = false;
  const QuenchedTailReport r = quenched_tail_experiment(
      env::constant_1d(1.0), geom::axis_frame(1), 20.0, 1.2, 60, 7, 1.0, 1, quiet, 0.25);
  CHECK(r.empirical == 0.0);
  CHECK(r.bound > 0.0);
}

TEST_CASE("quenched tail factorial bound worked example") {
  // d = 2, ceil(L^{beta-eps}/25) = 3: bound = 25 e / 3! = 11.33 (vacuous).
  env::PerturbedSRWLaw p;
  p.drift.resize(2);
  p.drift << 0.1, 0.0;
  p.epsilon = 0.05;
  const env::EnvironmentLaw law{p};
  const double L = 20.0;
  const ParameterSchedule sched = parameter_schedule(L, 2, *law.kappa());
  const double beta = sched.epsilon_L + std::log(60.0) / std::log(L);
  const QuenchedTailReport r =
      quenched_tail_experiment(law, geom::axis_frame(2), L, beta, 40, 11, 8.0, 4);
  CHECK(r.bound == doctest::Approx(25.0 * std::exp(1.0) / 6.0).epsilon(1e-9));
  CHECK(r.vacuous);
  CHECK(r.empirical <= r.bound);  // vacuously consistent
}

TEST_CASE("quenched tail regression case at L = 20") {
  const env::EnvironmentLaw law = env::constant_1d(0.55);
  const QuenchedTailReport r =
      quenched_tail_experiment(law, geom::axis_frame(1), 20.0, 0.8, 50, 13, {}, 2);
  // Frozen regression: quenched frontal probability ~0.97 per environment is
  // far above the threshold exp(-c1 L^0.8)/2, so no environment falls below.
  CHECK(r.empirical == 0.0);
  CHECK(r.vacuous);
  CHECK(r.threshold_log < -15.0);
}

TEST_CASE("quenched tail validation") {
  const env::EnvironmentLaw law = env::constant_1d(0.55);
  CHECK_THROWS_AS(quenched_tail_experiment(law, geom::axis_frame(1), 20.0, 0.0, 10, 1),
                  std::invalid_argument);
  env::DirichletLaw dl;
  dl.concentration.resize(2);
  dl.concentration << 2.0, 2.0;
  CHECK_THROWS_AS(
      quenched_tail_experiment(env::EnvironmentLaw{dl}, geom::axis_frame(1), 20.0, 0.9, 10, 1),
      std::invalid_argument);
}
