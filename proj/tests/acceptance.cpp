// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and budgets are pinned in code.

#include "oracles.hpp"

#include <rwre/conditions/audit.hpp>
#include <rwre/conditions/decay.hpp>
#include <rwre/conditions/goodness.hpp>
#include <rwre/conditions/pbox.hpp>
#include <rwre/conditions/rho.hpp>
#include <rwre/conditions/schedule.hpp>
#include <rwre/conditions/tail.hpp>
#include <rwre/environment/solomon.hpp>
#include <rwre/geometry/lattice.hpp>
#include <rwre/harness/run.hpp>
#include <rwre/parallel.hpp>
#include <rwre/solver/exit.hpp>
#include <rwre/solver/ruin.hpp>
#include <rwre/stats.hpp>
#include <rwre/walk/simulate.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <thread>

using namespace rwre;

namespace {

int g_failures = 0;
std::ostringstream g_detail;

#define EXPECT(cond, msg)                                    \
  do {                                                       \
    if (!(cond)) {                                           \
      ++local_failures;                                      \
      g_detail << "    expectation failed: " << msg << "\n"; \
    }                                                        \
  } while (0)

struct Criterion {
  const char* name;
  double limit_s;  // 0 = no stated budget
  int (*fn)();
};

int threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(8u, hw == 0 ? 1u : hw));
}

Site site1(std::int64_t a) {
  Site s(1);
  s << a;
  return s;
}

double simulated_speed(const env::EnvironmentLaw& law, std::uint64_t steps, std::uint64_t walks,
                       std::uint64_t seed) {
  const walk::StoppingSpec spec = walk::StoppingSpec::step_cap(steps);
  auto partials = par::map_chunks<double>(
      walks, threads(), 2, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        double sum = 0;
        for (std::uint64_t t = lo; t < hi; ++t) {
          env::Environment e(law, rng::mix(seed, t));
          rng::Stream stream = walk::trajectory_stream(seed, t);
          const walk::TrajectoryOutcome out =
              walk::simulate_until(e, site1(0), spec, stream, {.record_path = false});
          sum += static_cast<double>(out.final()[0]) / static_cast<double>(steps);
        }
        return sum;
      });
  double total = 0;
  for (double p : partials) total += p;
  return total / static_cast<double>(walks);
}

// 1. Solomon oracle vs direct simulation.
int criterion_solomon() {
  int local_failures = 0;
  const env::EnvironmentLaw ballistic = env::two_point_1d(0.9, 0.4);
  const env::SolomonReport rep = env::solomon_classify(ballistic);
  EXPECT(std::abs(rep.velocity - 0.10769) < 1e-5, "velocity " << rep.velocity);
  const double speed = simulated_speed(ballistic, 1'000'000, 50, 101);
  EXPECT(std::abs(speed - rep.velocity) < 0.02, "simulated speed " << speed);

  const env::EnvironmentLaw zero = env::two_point_1d(0.9, 0.25);
  const env::SolomonReport zrep = env::solomon_classify(zero);
  EXPECT(zrep.transience == env::Transience::Right, "transience");
  EXPECT(zrep.regime == env::SpeedRegime::ZeroSpeed, "regime");
  EXPECT(zrep.velocity == 0.0, "velocity should be zero");
  const double zspeed = simulated_speed(zero, 1'000'000, 50, 202);
  EXPECT(std::abs(zspeed) < 0.01, "zero-speed walk has |X_n/n| = " << std::abs(zspeed));
  return local_failures;
}

// 2. Exact solver vs gambler's-ruin closed forms.
int criterion_solver() {
  int local_failures = 0;
  double worst = 0;
  for (double p : {0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9}) {
    const env::Environment e(env::constant_1d(p), 1);
    for (std::int64_t a = 1; a <= 30; ++a) {
      for (std::int64_t b = 1; b <= 30; ++b) {
        const double split =
            solver::quenched_exit_split(e, solver::interval_view(-a, b), site1(0)).probabilities[0];
        worst = std::max(worst, std::abs(split - solver::ruin_probability(p, a, b)));
      }
    }
  }
  EXPECT(worst <= 1e-8, "max |split - ruin| = " << worst);

  double worst_sym = 0;
  const env::Environment sym(env::constant_1d(0.5), 1);
  for (std::int64_t a = 1; a <= 30; ++a) {
    const double split =
        solver::quenched_exit_split(sym, solver::interval_view(-a, a), site1(0)).probabilities[0];
    worst_sym = std::max(worst_sym, std::abs(split - 0.5));
  }
  EXPECT(worst_sym <= 1e-10, "max symmetric deviation " << worst_sym);
  return local_failures;
}

// 3. Wilson intervals from 1e5 trajectories cover the exact solver value.
int criterion_mc_calibration() {
  int local_failures = 0;
  oracle::Gen gen(20260810);
  int covered = 0;
  const int instances = 50;
  const std::uint64_t trials = 100000;

  for (int inst = 0; inst < instances; ++inst) {
    const bool two_d = inst % 2 == 1;
    double exact = 0;
    std::uint64_t hits = 0;
    if (!two_d) {
      const env::EnvironmentLaw law =
          env::two_point_1d(gen.uniform(0.55, 0.9), gen.uniform(0.35, 0.65));
      const std::int64_t a = gen.integer(4, 12), b = gen.integer(4, 12);
      const std::int64_t x0 = gen.integer(-2, 2);
      const env::Environment e(law, rng::mix(31, static_cast<std::uint64_t>(inst)));
      exact = solver::solve_exit_field(e, solver::interval_view(-a, b), site1(x0))
                  .prob(site1(x0), 0);
      const walk::StoppingSpec spec = walk::StoppingSpec::first_of(
          {walk::StoppingSpec::exit_region(
               [a, b](const Site& y) { return -a < y[0] && y[0] < b; }, "interval"),
           walk::StoppingSpec::step_cap(1'000'000)});
      auto partials = par::map_chunks<std::uint64_t>(
          trials, threads(), par::kTrialChunk,
          [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t h = 0;
            for (std::uint64_t t = lo; t < hi; ++t) {
              rng::Stream stream = walk::trajectory_stream(rng::mix(77, inst), t);
              const walk::TrajectoryOutcome out =
                  walk::simulate_until(e, site1(x0), spec, stream, {.record_path = false});
              if (!out.censored && out.final()[0] >= b) ++h;
            }
            return h;
          });
      for (std::uint64_t h : partials) hits += h;
    } else {
      env::PerturbedSRWLaw p;
      p.drift.resize(2);
      p.drift << gen.uniform(0.0, 0.2), gen.uniform(-0.1, 0.1);
      p.epsilon = gen.uniform(0.02, 0.1);
      const env::EnvironmentLaw law{p};
      const geom::BoxSpecification box(geom::axis_frame(2), gen.uniform(4.0, 8.0),
                                       gen.uniform(4.0, 8.0), gen.uniform(4.0, 8.0), true);
      Site x0 = zero_site(2);
      const env::Environment e(law, rng::mix(32, static_cast<std::uint64_t>(inst)));
      exact = solver::solve_exit_field(e, solver::make_view(box), x0).prob(x0, 0);
      const walk::StoppingSpec spec = walk::StoppingSpec::first_of(
          {walk::StoppingSpec::exit_region([box](const Site& y) { return box.contains(y); }, "box"),
           walk::StoppingSpec::step_cap(1'000'000)});
      auto partials = par::map_chunks<std::uint64_t>(
          trials, threads(), par::kTrialChunk,
          [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t h = 0;
            for (std::uint64_t t = lo; t < hi; ++t) {
              rng::Stream stream = walk::trajectory_stream(rng::mix(78, inst), t);
              const walk::TrajectoryOutcome out =
                  walk::simulate_until(e, x0, spec, stream, {.record_path = false});
              if (!out.censored &&
                  box.classify(out.final()) == geom::PointClass::FrontBoundary) {
                ++h;
              }
            }
            return h;
          });
      for (std::uint64_t h : partials) hits += h;
    }
    if (stats::wilson99(hits, trials).covers(exact)) ++covered;
  }
  EXPECT(covered >= 48, "coverage " << covered << "/50");
  g_detail << "    coverage " << covered << "/50\n";
  return local_failures;
}

// 4. Parameter schedule exactness.
int criterion_schedule() {
  int local_failures = 0;
  const cond::ParameterSchedule s =
      cond::parameter_schedule(std::exp(std::exp(2.0)), 2, 0.1);
  EXPECT(std::abs(s.gamma_L - 0.346574) < 1e-5, "gamma " << s.gamma_L);
  EXPECT(std::abs(s.epsilon_L - 0.25) < 1e-5, "epsilon " << s.epsilon_L);
  EXPECT(std::abs(s.a - 0.42587) < 1e-5, "a " << s.a);
  EXPECT(s.n_L == 11, "n_L " << s.n_L);
  EXPECT(std::abs(s.betas.back() - 1.039721) < 1e-5, "beta_11 " << s.betas.back());
  EXPECT(std::abs(s.c1 - 9.21034) < 1e-5, "c1 " << s.c1);
  for (double e10 = 2.0; e10 <= 12.0; e10 += 0.125) {
    const cond::ParameterSchedule grid = cond::parameter_schedule(std::pow(10.0, e10), 2, 0.1);
    if (!(grid.betas.back() > 1.0)) {
      EXPECT(false, "beta_n <= 1 at L = 1e" << e10);
      break;
    }
  }
  return local_failures;
}

// 5. Constants audit demonstrates the c0 scale.
int criterion_audit() {
  int local_failures = 0;
  const cond::ConstantAudit audit = cond::constants_audit(2, 600, 64);
  EXPECT(audit.cprime_inf < 0.0, "cprime infimum " << audit.cprime_inf);
  EXPECT(std::abs(audit.minimal_lnN0 - 163.5) <= 0.5, "minimal lnN0 " << audit.minimal_lnN0);
  g_detail << "    cprime_inf " << audit.cprime_inf << ", minimal lnN0 " << audit.minimal_lnN0
           << " (N0 ~ 10^" << audit.minimal_lnN0 / std::log(10.0) << ")\n";
  return local_failures;
}

// 6. Finite-box polynomial condition checker soundness.
int criterion_pbox() {
  int local_failures = 0;
  const env::EnvironmentLaw law = env::constant_1d(0.6);
  const cond::PboxVerdict pass = cond::check_pbox(law, 12, 1.0, geom::axis_frame(1), 1, {});
  EXPECT(std::abs(pass.sup_estimate - 0.016676) < 1e-5, "sup " << pass.sup_estimate);
  EXPECT(pass.verdict == cond::Verdict::Pass, "verdict at M = 1");
  const cond::PboxVerdict fail = cond::check_pbox(law, 12, 2.0, geom::axis_frame(1), 1, {});
  EXPECT(fail.verdict == cond::Verdict::Fail, "verdict at M = 2");
  return local_failures;
}

// 7. Decay curves and the wide-slab estimate.
int criterion_decay() {
  int local_failures = 0;
  Vec l(1);
  l << 1.0;
  const cond::DecayCurve curve = cond::decay_curve(env::constant_1d(0.6), l, 1.0, {5, 10, 15},
                                                   200000, 424242, 1'000'000, threads());
  const double exact[3] = {1.0 - oracle::ruin_constant(0.6, 6, 6),
                           1.0 - oracle::ruin_constant(0.6, 11, 11),
                           1.0 - oracle::ruin_constant(0.6, 16, 16)};
  EXPECT(std::abs(exact[0] - 0.080706) < 1e-6, "closed form at L=5");
  for (int i = 0; i < 3; ++i) {
    EXPECT(curve.points[i].ci_lo <= exact[i] && exact[i] <= curve.points[i].ci_hi,
           "CI at L = " << curve.points[i].L << " misses " << exact[i]);
  }
  EXPECT(std::abs(curve.stretched_exponent - 1.0) <= 0.15,
         "stretched exponent " << curve.stretched_exponent);

  const cond::SlabDecayReport slab =
      cond::slab_decay(env::constant_1d(0.6), geom::axis_frame(1), 10.0, 200000, 515151,
                       1'000'000, threads());
  EXPECT(slab.ci_lo <= 0.011561 && 0.011561 <= slab.ci_hi,
         "slab CI [" << slab.ci_lo << ", " << slab.ci_hi << "]");
  g_detail << "    stretched exponent " << curve.stretched_exponent << "\n";
  return local_failures;
}

// 8. Binomial tail bound, exhaustively to n = 60.
int criterion_binomial() {
  int local_failures = 0;
  const cond::BinomialBound b = cond::binomial_tail(5, 2);
  EXPECT(std::abs(b.exact - 0.26272) <= 1e-5, "exact tail " << b.exact);
  for (std::uint64_t n = 1; n <= 60; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      const cond::BinomialBound bb = cond::binomial_tail(n, k);
      if (!(bb.exact <= bb.bound + 1e-12)) {
        EXPECT(false, "bound violated at n=" << n << " k=" << k);
        return local_failures;
      }
    }
  }
  return local_failures;
}

// 9. Geometry: cover property, colouring, boundary tri-partition.
int criterion_geometry() {
  int local_failures = 0;
  for (const std::int64_t n0 : {12, 18}) {
    for (const int k : {0, 1}) {
      for (const int d : {1, 2, 3}) {
        const geom::BoxFamily family(geom::axis_frame(d), geom::ScaleSchedule(n0), k);
        Site lo = zero_site(d), hi = zero_site(d);
        const std::int64_t half = d == 1 ? 6000 : (d == 2 ? 50 : 11);
        for (int i = 0; i < d; ++i) {
          lo[i] = -half;
          hi[i] = half;
        }
        const geom::CoverReport report = geom::cover_check(family, {lo, hi});
        EXPECT(report.checked >= 10000, "window too small");
        if (!report.covered) {
          EXPECT(false, "cover fails at N0=" << n0 << " k=" << k << " d=" << d);
        }
      }
    }
  }

  for (const std::int64_t n : {7, 20}) {
    const double wt = static_cast<double>(n * n * n) * std::log(std::log(n)) / std::log(n);
    Site lo(2), hi(2);
    lo << -11 * n, -static_cast<std::int64_t>(11 * wt);
    hi << 11 * n, static_cast<std::int64_t>(11 * wt);
    try {
      const geom::ColoringPartition part = geom::color_classes(n, geom::axis_frame(2), {lo, hi});
      EXPECT(part.anchors_total >= 400, "only " << part.anchors_total << " anchors at n=" << n);
      EXPECT(part.verified, "colouring unverified");
      EXPECT(part.classes.size() == 25, "class count");
    } catch (const std::runtime_error& e) {
      EXPECT(false, "colouring disjointness violated at n=" << n << ": " << e.what());
    }
  }

  // Boundary tri-partition exactness on small boxes.
  geom::BoxOverrides ov;
  ov.width = 8;
  ov.frontal_width = 4;
  for (const int d : {1, 2}) {
    const geom::Box box(zero_site(d), 0, geom::axis_frame(d), geom::ScaleSchedule(12),
                        d == 1 ? geom::BoxOverrides{} : ov);
    const geom::LatticeWindow w = geom::frame_bounding_window(
        box.frame(), box.anchor(), -box.nk() / 2.0 - 2, box.nk() + 2, box.width() + 2);
    bool ok = true;
    w.for_each([&](const Site& y) {
      const bool on_b = box.on_boundary(y);
      const geom::PointClass c = box.classify(y);
      const bool part = c == geom::PointClass::FrontBoundary ||
                        c == geom::PointClass::BackBoundary ||
                        c == geom::PointClass::SideBoundary;
      if (on_b != part) ok = false;
    });
    EXPECT(ok, "tri-partition mismatch in d=" << d);
  }
  return local_failures;
}

// 10. Goodness logic: witness search vs brute force; union-bound consistency.
int criterion_goodness() {
  int local_failures = 0;
  oracle::Gen gen(909090);
  for (int inst = 0; inst < 100; ++inst) {
    const int m = static_cast<int>(gen.integer(3, 50));
    std::vector<std::pair<double, double>> iv;
    for (int i = 0; i < m; ++i) {
      const double lo = gen.uniform(0.0, 36.0);
      iv.emplace_back(lo, lo + gen.uniform(1.0, 9.0));
    }
    std::vector<int> bad;
    for (int i = 0; i < m; ++i) {
      if (gen.u01() < 0.3) bad.push_back(i);
    }
    auto intersects = [&](int a, int b) {
      return std::max(iv[a].first, iv[b].first) <= std::min(iv[a].second, iv[b].second);
    };
    const auto fast = cond::find_goodness_witness(m, bad, intersects);
    bool brute_good = false;
    for (int c = 0; c < m && !brute_good; ++c) {
      bool covers = true;
      for (int b : bad) {
        if (!intersects(c, b)) {
          covers = false;
          break;
        }
      }
      brute_good = covers;
    }
    if (fast.has_value() != brute_good) {
      EXPECT(false, "witness search disagrees with brute force at instance " << inst);
      break;
    }
  }

  env::PerturbedSRWLaw p;
  p.drift.resize(1);
  p.drift << 0.6;
  p.epsilon = 0.2;
  const cond::GoodnessExperiment exp = cond::goodness_experiment(
      env::EnvironmentLaw{p}, 0, 12, 100, 4242, geom::axis_frame(1), {}, threads());
  EXPECT(exp.union_bound_ok, "union bound violated");
  EXPECT((1.0 - exp.p_hat) <= exp.union_rhs_mean + 1e-12, "union bound arithmetic");
  g_detail << "    good fraction " << exp.p_hat << ", union rhs " << exp.union_rhs_mean << "\n";
  return local_failures;
}

// 11. Reproducibility across thread counts.
int criterion_reproducibility() {
  int local_failures = 0;
  std::vector<std::pair<std::string, nlohmann::json>> configs;
  {
    nlohmann::json decay;
    decay["seed"] = 7;
    decay["law"] = {{"kind", "two_point"}, {"d", 1}, {"right_a", 0.8}, {"right_b", 0.45}};
    decay["L_list"] = {4.0, 8.0};
    decay["trials"] = 20000;
    configs.emplace_back("decay", decay);

    nlohmann::json slab;
    slab["seed"] = 8;
    slab["law"] = {{"kind", "constant"}, {"d", 1}, {"right", 0.6}};
    slab["L"] = 10.0;
    slab["trials"] = 20000;
    configs.emplace_back("slab-decay", slab);

    nlohmann::json pbox;
    pbox["seed"] = 9;
    pbox["law"] = {{"kind", "two_point"}, {"d", 1}, {"right_a", 0.85}, {"right_b", 0.6}};
    pbox["N0"] = 12;
    pbox["M"] = 1.0;
    pbox["mode"] = "mc";
    pbox["trials"] = 4000;
    configs.emplace_back("check-pbox", pbox);

    nlohmann::json rho;
    rho["seed"] = 10;
    rho["law"] = {{"kind", "two_point"}, {"d", 1}, {"right_a", 0.8}, {"right_b", 0.55}};
    rho["L"] = 16.0;
    rho["l_tilde"] = 1.0;
    rho["env_trials"] = 400;
    configs.emplace_back("rho", rho);

    nlohmann::json renorm;
    renorm["seed"] = 11;
    renorm["law"] = {{"kind", "perturbed_srw"}, {"drift", {0.6}}, {"epsilon", 0.2}};
    renorm["N0"] = 12;
    renorm["env_trials"] = 60;
    configs.emplace_back("renorm", renorm);

    nlohmann::json qtail;
    qtail["seed"] = 12;
    qtail["law"] = {{"kind", "two_point"}, {"d", 1}, {"right_a", 0.6}, {"right_b", 0.5}};
    qtail["L"] = 20.0;
    qtail["beta"] = 0.9;
    qtail["env_trials"] = 50;
    configs.emplace_back("quenched-tail", qtail);
  }

  for (auto& [name, doc] : configs) {
    doc["threads"] = 1;
    const harness::RunOutcome a = harness::run(harness::parse_config(name, doc));
    doc["threads"] = 8;
    const harness::RunOutcome b = harness::run(harness::parse_config(name, doc));
    if (a.records.size() != b.records.size()) {
      EXPECT(false, name << ": record count differs");
      continue;
    }
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      const auto& ra = a.records[i];
      const auto& rb = b.records[i];
      if (ra.value != rb.value || ra.ci_lo != rb.ci_lo || ra.ci_hi != rb.ci_hi ||
          ra.trials != rb.trials || ra.censored != rb.censored) {
        EXPECT(false, name << ": value fields differ for " << ra.quantity);
      }
    }
  }
  return local_failures;
}

const Criterion kCriteria[] = {
    {"Solomon oracle (two-point laws, simulated speeds)", 60.0, criterion_solomon},
    {"Exact solver vs gambler's-ruin closed forms", 10.0, criterion_solver},
    {"Monte Carlo calibration against exact solves (50 instances)", 300.0,
     criterion_mc_calibration},
    {"Parameter schedule exactness", 0.0, criterion_schedule},
    {"Constants audit scale", 1.0, criterion_audit},
    {"Finite-box polynomial condition checker", 60.0, criterion_pbox},
    {"Decay curves and wide-slab estimate", 120.0, criterion_decay},
    {"Binomial tail bound (exhaustive to n = 60)", 0.0, criterion_binomial},
    {"Geometry: cover property, colouring, boundary partition", 0.0, criterion_geometry},
    {"Goodness logic and union-bound consistency", 0.0, criterion_goodness},
    {"Reproducibility across thread counts", 0.0, criterion_reproducibility},
};

}  // namespace

int main() {
  int index = 0;
  for (const Criterion& c : kCriteria) {
    ++index;
    g_detail.str("");
    const auto t0 = std::chrono::steady_clock::now();
    int failures = 0;
    try {
      failures = c.fn();
    } catch (const std::exception& e) {
      ++failures;
      g_detail << "    exception: " << e.what() << "\n";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      ++failures;
      g_detail << "    runtime " << secs << " s exceeds budget " << c.limit_s << " s\n";
    }
    std::printf("[%s] %2d. %s (%.1f s)\n", failures == 0 ? "PASS" : "FAIL", index, c.name, secs);
    const std::string detail = g_detail.str();
    if (!detail.empty()) std::fputs(detail.c_str(), stdout);
    g_failures += failures;
  }
  if (g_failures > 0) {
    std::printf("ACCEPTANCE: %d expectation(s) failed\n", g_failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all criteria passed\n");
  return 0;
}
