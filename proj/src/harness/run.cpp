#include <rwre/harness/run.hpp>

#include <rwre/conditions/audit.hpp>
#include <rwre/conditions/decay.hpp>
#include <rwre/conditions/goodness.hpp>
#include <rwre/conditions/pbox.hpp>
#include <rwre/conditions/rho.hpp>
#include <rwre/conditions/schedule.hpp>
#include <rwre/conditions/tail.hpp>
#include <rwre/environment/solomon.hpp>
#include <rwre/parallel.hpp>
#include <rwre/stats.hpp>
#include <rwre/walk/simulate.hpp>

#include <chrono>
#include <fstream>

namespace rwre::harness {

namespace {

class RecordSink {
 public:
  RecordSink(const ExperimentConfig& config)
      : config_(config), digest_(config_digest(config.doc)), t0_(std::chrono::steady_clock::now()) {}

  ResultRecord& add(const std::string& quantity, double value) {
    if (!known_quantity(quantity)) {
      throw std::logic_error("unregistered quantity identifier: " + quantity);
    }
    ResultRecord r;
    r.experiment = config_.experiment;
    r.config_digest = digest_;
    r.quantity = quantity;
    r.value = value;
    r.ci_lo = value;
    r.ci_hi = value;
    r.exact = false;
    r.seed = config_.seed;
    records_.push_back(std::move(r));
    return records_.back();
  }

  ResultRecord& add_exact(const std::string& quantity, double value) {
    ResultRecord& r = add(quantity, value);
    r.exact = true;
    return r;
  }

  std::vector<ResultRecord> finish() {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0_)
                          .count();
    for (auto& r : records_) r.wall_ms = ms;
    return std::move(records_);
  }

 private:
  const ExperimentConfig& config_;
  std::string digest_;
  std::chrono::steady_clock::time_point t0_;
  std::vector<ResultRecord> records_;
};

Site parse_site(const ExperimentConfig& config, const char* key, int d) {
  Site s = zero_site(d);
  if (config.has(key)) {
    const auto v = config.doc.at(key).get<std::vector<std::int64_t>>();
    if (static_cast<int>(v.size()) != d) throw ConfigError("site dimension mismatch");
    for (int i = 0; i < d; ++i) s[i] = v[static_cast<std::size_t>(i)];
  }
  return s;
}

Vec parse_vec(const nlohmann::json& j) {
  const auto v = j.get<std::vector<double>>();
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

double mean_speed_simulation(const env::EnvironmentLaw& law, const Vec& l, std::uint64_t steps,
                             std::uint64_t walks, std::uint64_t seed, int threads,
                             stats::Interval* ci_out) {
  const walk::StoppingSpec spec = walk::StoppingSpec::step_cap(steps);
  const Site origin = zero_site(law.d());
  auto partials = par::map_chunks<std::vector<double>>(
      walks, threads, 4, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        std::vector<double> part;
        for (std::uint64_t t = lo; t < hi; ++t) {
          env::Environment environment(law, rng::mix(rng::mix(seed, 0x53494du), t));
          rng::Stream stream = walk::trajectory_stream(seed, t);
          const walk::TrajectoryOutcome out =
              walk::simulate_until(environment, origin, spec, stream, {.record_path = false});
          part.push_back(l.dot(to_vec(out.final())) / static_cast<double>(steps));
        }
        return part;
      });
  std::vector<double> speeds;
  for (auto& p : partials) speeds.insert(speeds.end(), p.begin(), p.end());
  if (ci_out) *ci_out = stats::mean_ci99(speeds);
  return stats::mean(speeds);
}

RunOutcome run_solomon(const ExperimentConfig& config) {
  RecordSink sink(config);
  const env::EnvironmentLaw law = config.law();
  const env::SolomonReport report = env::solomon_classify(law);
  sink.add_exact("solomon.E_ln_rho", report.moments.e_ln_rho).detail = report.to_json();
  sink.add_exact("solomon.E_rho", report.moments.e_rho);
  sink.add_exact("solomon.E_rho_inv", report.moments.e_rho_inv);
  sink.add_exact("solomon.velocity", report.velocity).detail = report.to_json();

  if (config.has("simulate_check")) {
    const auto& sc = config.doc.at("simulate_check");
    const std::uint64_t steps = sc.value("steps", std::uint64_t{1'000'000});
    const std::uint64_t walks = sc.value("walks", std::uint64_t{50});
    Vec l = Vec::Zero(1);
    l[0] = 1.0;
    stats::Interval ci;
    const double speed = mean_speed_simulation(law, l, steps, walks, config.seed, config.threads, &ci);
    ResultRecord& r = sink.add("solomon.sim_speed", speed);
    r.ci_lo = ci.lo;
    r.ci_hi = ci.hi;
    r.trials = walks;
  }
  return {sink.finish(), false};
}

RunOutcome run_simulate(const ExperimentConfig& config) {
  RecordSink sink(config);
  const env::EnvironmentLaw law = config.law();
  const geom::DirectionFrame frame = config.frame();
  const Site start = parse_site(config, "start", law.d());

  std::vector<walk::StoppingSpec> specs;
  if (config.has("stop")) {
    const auto& stop = config.doc.at("stop");
    const std::string kind = stop.value("kind", "");
    if (kind == "directional") {
      specs.push_back(walk::StoppingSpec::enter_half_space(
          stop.contains("l") ? parse_vec(stop.at("l")) : frame.l(), stop.at("L").get<double>()));
    } else if (kind == "region") {
      const solver::RegionView view = parse_region(config, stop.at("region"));
      specs.push_back(walk::StoppingSpec::exit_region(view.inside, "region"));
    } else if (kind == "points") {
      std::vector<Site> pts;
      for (const auto& pj : stop.at("points")) {
        const auto v = pj.get<std::vector<std::int64_t>>();
        Site s(static_cast<Eigen::Index>(v.size()));
        for (std::size_t i = 0; i < v.size(); ++i) s[static_cast<Eigen::Index>(i)] = v[i];
        pts.push_back(s);
      }
      specs.push_back(walk::StoppingSpec::enter_points(std::move(pts)));
    } else {
      throw ConfigError("unknown stop kind: " + kind);
    }
  }
  specs.push_back(walk::StoppingSpec::step_cap(config.step_cap));
  const walk::StoppingSpec spec = walk::StoppingSpec::first_of(std::move(specs));

  const bool dump = config.has("dump_path");
  std::ofstream dump_out;
  if (dump) {
    dump_out.open(config.get<std::string>("dump_path"));
    if (!dump_out) throw ConfigError("cannot open dump_path");
  }

  struct Partial {
    double steps = 0;
    std::uint64_t censored = 0;
    double displacement = 0;
  };
  std::vector<walk::TrajectoryOutcome> dumped;
  auto partials = par::map_chunks<Partial>(
      config.trials, dump ? 1 : config.threads, par::kTrialChunk,
      [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        Partial part;
        for (std::uint64_t t = lo; t < hi; ++t) {
          env::Environment environment(law, rng::mix(rng::mix(config.seed, 0x53494du), t));
          rng::Stream stream = walk::trajectory_stream(config.seed, t);
          const walk::TrajectoryOutcome out =
              walk::simulate_until(environment, start, spec, stream, {.record_path = dump});
          part.steps += static_cast<double>(out.steps);
          part.censored += out.censored ? 1 : 0;
          part.displacement += frame.l().dot(to_vec(out.final()) - to_vec(start));
          if (dump) {
            for (std::size_t i = 0; i < out.path.size(); ++i) {
              nlohmann::json line;
              line["trial"] = t;
              line["step"] = i;
              line["site"] = std::vector<std::int64_t>(out.path[i].data(),
                                                       out.path[i].data() + out.path[i].size());
              dump_out << line.dump() << '\n';
            }
          }
        }
        return part;
      });
  double steps = 0, displacement = 0;
  std::uint64_t censored = 0;
  for (const auto& p : partials) {
    steps += p.steps;
    censored += p.censored;
    displacement += p.displacement;
  }
  const double n = static_cast<double>(config.trials);
  ResultRecord& r1 = sink.add("simulate.mean_steps", steps / n);
  r1.trials = config.trials;
  ResultRecord& r2 = sink.add("simulate.censored_fraction", static_cast<double>(censored) / n);
  r2.trials = config.trials;
  r2.censored = censored;
  ResultRecord& r3 = sink.add("simulate.mean_displacement_l", displacement / n);
  r3.trials = config.trials;
  return {sink.finish(), false};
}

RunOutcome run_exit_prob(const ExperimentConfig& config) {
  RecordSink sink(config);
  const env::EnvironmentLaw law = config.law();
  const solver::RegionView view = parse_region(config, config.doc.at("region"));
  const Site start = parse_site(config, "start", law.d());
  const std::uint64_t env_seed = config.get_or<std::uint64_t>("env_seed", config.seed);
  const env::Environment environment(law, env_seed);
  const solver::ExitDistribution dist = solver::quenched_exit_split(environment, view, start);
  for (std::size_t p = 0; p < dist.part_names.size(); ++p) {
    ResultRecord& r = sink.add_exact("exit.part_prob", dist.probabilities[p]);
    r.detail = {{"part", dist.part_names[p]}, {"region", dist.region}, {"direct", dist.direct}};
  }
  sink.add_exact("exit.residual", dist.residual);
  return {sink.finish(), false};
}

RunOutcome run_check_pbox(const ExperimentConfig& config) {
  RecordSink sink(config);
  const env::EnvironmentLaw law = config.law();
  cond::PboxBudget budget;
  budget.max_starts = config.get_or<std::uint64_t>("max_starts", 512);
  budget.overrides = config.overrides();
  budget.nonfrontal.trials = config.trials;
  budget.nonfrontal.env_trials = config.env_trials;
  budget.nonfrontal.step_cap = config.step_cap;
  budget.nonfrontal.threads = config.threads;
  const std::string mode = config.get_or<std::string>("mode", "auto");
  if (mode == "exact") budget.nonfrontal.mode = cond::NonfrontalOptions::Mode::Exact;
  if (mode == "mc") budget.nonfrontal.mode = cond::NonfrontalOptions::Mode::MonteCarlo;

  const cond::PboxVerdict verdict =
      cond::check_pbox(law, config.get<std::int64_t>("N0"), config.get<double>("M"),
                       config.frame(), config.seed, budget);
  ResultRecord& r = sink.add("pbox.sup_nonfrontal", verdict.sup_estimate);
  r.ci_lo = verdict.sup_ci_lo;
  r.ci_hi = verdict.sup_ci_hi;
  r.exact = !verdict.starts.empty() && verdict.starts.front().exact;
  r.detail = verdict.to_json();
  sink.add_exact("pbox.threshold", verdict.threshold);
  const double code = verdict.verdict == cond::Verdict::Pass
                          ? 1.0
                          : (verdict.verdict == cond::Verdict::Fail ? 0.0 : -1.0);
  sink.add_exact("pbox.verdict", code).detail = {{"verdict", cond::to_string(verdict.verdict)},
                                                 {"partial", verdict.partial}};
  return {sink.finish(), verdict.verdict != cond::Verdict::Pass};
}

RunOutcome run_decay(const ExperimentConfig& config) {
  RecordSink sink(config);
  const env::EnvironmentLaw law = config.law();
  const Vec l_prime = config.has("l_prime") ? parse_vec(config.doc.at("l_prime"))
                                            : config.frame().l();
  const cond::DecayCurve curve = cond::decay_curve(
      law, l_prime, config.get_or<double>("b", 1.0), config.get<std::vector<double>>("L_list"),
      config.trials, config.seed, config.step_cap, config.threads);
  for (const auto& p : curve.points) {
    ResultRecord& r = sink.add("decay.backtrack_prob", p.estimate);
    r.ci_lo = p.ci_lo;
    r.ci_hi = p.ci_hi;
    r.trials = p.trials;
    r.censored = p.censored;
    r.detail = {{"L", p.L}, {"hits", p.hits}};
    if (p.hits == 0) r.detail["note"] = "< 1/trials";
  }
  sink.add("decay.poly_slope", curve.poly_slope).detail = {{"fit_points", curve.fit_points}};
  sink.add("decay.stretched_exponent", curve.stretched_exponent).detail = {
      {"fit_points", curve.fit_points}};
  return {sink.finish(), false};
}

RunOutcome run_slab_decay(const ExperimentConfig& config) {
  RecordSink sink(config);
  const cond::SlabDecayReport report =
      cond::slab_decay(config.law(), config.frame(), config.get<double>("L"), config.trials,
                       config.seed, config.step_cap, config.threads);
  ResultRecord& r = sink.add("slab.nonfrontal_prob", report.estimate);
  r.ci_lo = report.ci_lo;
  r.ci_hi = report.ci_hi;
  r.trials = report.trials;
  r.censored = report.censored;
  r.detail = report.to_json();
  sink.add("slab.gamma_hat", report.gamma_hat);
  sink.add_exact("slab.gamma_target", report.gamma_target);
  return {sink.finish(), false};
}

RunOutcome run_rho(const ExperimentConfig& config) {
  RecordSink sink(config);
  const env::EnvironmentLaw law = config.law();
  const geom::DirectionFrame frame = config.frame();
  const double L = config.get<double>("L");
  const double conforming = L * L * L - 1.0;
  const double lt = config.get_or<double>("l_tilde", conforming);
  const geom::BoxSpecification box =
      geom::BoxSpecification::for_scale(frame, L, lt, lt != conforming);
  const cond::RhoMode mode = config.get_or<std::string>("mode", "exact") == "mc"
                                 ? cond::RhoMode::McPerEnv
                                 : cond::RhoMode::ExactPerEnv;
  std::vector<double> a_grid;
  if (config.has("a_grid")) {
    a_grid = config.get<std::vector<double>>("a_grid");
  } else {
    a_grid.push_back(config.get_or<double>("a", 1.0));
  }

  for (double a : a_grid) {
    const cond::RhoMomentResult result =
        cond::rho_moment(law, box, a, config.env_trials, mode, config.seed,
                         config.get_or<std::uint64_t>("mc_walks_per_env", 20000), config.threads);
    ResultRecord& r = sink.add("rho.moment", result.mean);
    r.ci_lo = result.ci_lo;
    r.ci_hi = result.ci_hi;
    r.trials = result.env_trials;
    r.exact = law.deterministic() && result.exact_per_env;
    r.detail = result.to_json();

    if (config.get_or<bool>("decompose", false)) {
      if (!law.kappa()) throw ConfigError("rho decompose requires a uniformly elliptic law");
      const cond::ParameterSchedule schedule = cond::parameter_schedule(L, law.d(), *law.kappa());
      const cond::RhoDecomposition dec = cond::rho_decomposition(result.samples, schedule);
      sink.add("rho.decomp.e0", dec.e0).detail = {{"a", a}};
      for (std::size_t j = 0; j < dec.ej.size(); ++j) {
        sink.add("rho.decomp.ej", dec.ej[j]).detail = {{"a", a}, {"j", j + 1}};
      }
      sink.add("rho.decomp.en", dec.en).detail = {{"a", a}, {"total", dec.total}};
    }
  }
  return {sink.finish(), false};
}

RunOutcome run_effective_criterion(const ExperimentConfig& config) {
  RecordSink sink(config);
  const env::EnvironmentLaw law = config.law();
  const auto L_grid = config.get<std::vector<double>>("L_grid");
  std::vector<double> l_tilde;
  if (config.has("l_tilde")) {
    l_tilde = config.get<std::vector<double>>("l_tilde");
  } else {
    for (double L : L_grid) l_tilde.push_back(L * L * L - 1.0);
  }
  const auto a_grid = config.get_or<std::vector<double>>("a_grid", {1.0});
  const cond::RhoMode mode = config.get_or<std::string>("mode", "exact") == "mc"
                                 ? cond::RhoMode::McPerEnv
                                 : cond::RhoMode::ExactPerEnv;
  const cond::EffectiveCriterionReport report = cond::effective_criterion(
      law, config.frame(), L_grid, l_tilde, a_grid, config.get_or<double>("c3", 1.0),
      config.env_trials, mode, config.seed, config.threads, config.get_or<double>("c2", 0.0));
  sink.add("effcrit.min_value", report.min_value).detail = report.to_json();
  sink.add("effcrit.min_value_hi", report.min_value_hi);
  sink.add_exact("effcrit.satisfied", report.satisfied ? 1.0 : 0.0);
  return {sink.finish(), !report.satisfied};
}

RunOutcome run_schedule(const ExperimentConfig& config) {
  RecordSink sink(config);
  const cond::ParameterSchedule s = cond::parameter_schedule(
      config.get<double>("L"), config.get<int>("d"), config.get<double>("kappa"));
  sink.add_exact("schedule.gamma_L", s.gamma_L).detail = s.to_json();
  sink.add_exact("schedule.epsilon_L", s.epsilon_L);
  sink.add_exact("schedule.beta1", s.beta1);
  sink.add_exact("schedule.alpha", s.alpha);
  sink.add_exact("schedule.a", s.a);
  sink.add_exact("schedule.c1", s.c1);
  sink.add_exact("schedule.n_L", static_cast<double>(s.n_L));
  sink.add_exact("schedule.beta_n", s.betas.back());
  sink.add_exact("schedule.par_scale_n", static_cast<double>(s.par_scale_n));
  return {sink.finish(), false};
}

RunOutcome run_audit(const ExperimentConfig& config) {
  RecordSink sink(config);
  const cond::ConstantAudit audit = cond::constants_audit(
      config.get<int>("d"), config.get<std::int64_t>("N0"),
      config.get_or<int>("series_terms", 64), config.get_or<double>("kappa", 0.1));
  sink.add_exact("audit.cprime_inf", audit.cprime_inf).detail = audit.to_json();
  sink.add_exact("audit.cdprime_inf", audit.cdprime_inf);
  sink.add_exact("audit.chain_sufficient", audit.chain_sufficient ? 1.0 : 0.0);
  sink.add_exact("audit.minimal_lnN0", audit.minimal_lnN0);
  return {sink.finish(), false};
}

RunOutcome run_renorm(const ExperimentConfig& config) {
  RecordSink sink(config);
  const cond::GoodnessExperiment exp = cond::goodness_experiment(
      config.law(), config.get_or<int>("k", 0), config.get<std::int64_t>("N0"),
      config.env_trials, config.seed, config.frame(), config.overrides(), config.threads);
  ResultRecord& r = sink.add("renorm.good_fraction", exp.p_hat);
  r.ci_lo = exp.ci_lo;
  r.ci_hi = exp.ci_hi;
  r.trials = exp.env_trials;
  r.detail = exp.to_json();
  sink.add_exact("renorm.bound", exp.bound);
  if (exp.k == 0) {
    sink.add("renorm.union_rhs_mean", exp.union_rhs_mean).trials = exp.env_trials;
    sink.add_exact("renorm.union_bound_ok", exp.union_bound_ok ? 1.0 : 0.0);
    sink.add("renorm.chain_rhs", exp.chain_rhs);
  }
  return {sink.finish(), exp.k == 0 && !exp.union_bound_ok};
}

RunOutcome run_coloring(const ExperimentConfig& config) {
  RecordSink sink(config);
  const geom::DirectionFrame frame = config.frame();
  const std::int64_t n = config.get<std::int64_t>("n");
  const std::int64_t hw = config.get_or<std::int64_t>("window_halfwidth", 10 * n);
  Site lo = zero_site(frame.d), hi = zero_site(frame.d);
  for (int i = 0; i < frame.d; ++i) {
    lo[i] = -hw;
    hi[i] = hw;
  }
  bool disjoint = true;
  std::uint64_t classes = 0, anchors = 0;
  try {
    const geom::ColoringPartition part = geom::color_classes(n, frame, {lo, hi});
    classes = part.classes.size();
    anchors = part.anchors_total;
  } catch (const std::runtime_error&) {
    disjoint = false;
  }
  sink.add_exact("coloring.classes", static_cast<double>(classes));
  sink.add_exact("coloring.anchors", static_cast<double>(anchors));
  sink.add_exact("coloring.disjoint", disjoint ? 1.0 : 0.0);
  return {sink.finish(), !disjoint};
}

RunOutcome run_quenched_tail(const ExperimentConfig& config) {
  RecordSink sink(config);
  std::optional<double> lt;
  if (config.has("l_tilde")) lt = config.get<double>("l_tilde");
  std::optional<double> kappa;
  if (config.has("kappa")) kappa = config.get<double>("kappa");
  const cond::QuenchedTailReport report = cond::quenched_tail_experiment(
      config.law(), config.frame(), config.get<double>("L"), config.get<double>("beta"),
      config.env_trials, config.seed, lt, config.threads, {}, kappa);
  ResultRecord& r = sink.add("qtail.empirical", report.empirical);
  r.ci_lo = report.ci_lo;
  r.ci_hi = report.ci_hi;
  r.trials = report.env_trials;
  r.detail = report.to_json();
  sink.add_exact("qtail.threshold_log", report.threshold_log);
  sink.add_exact("qtail.bound_log", report.bound_log);
  sink.add_exact("qtail.bound", report.bound);
  sink.add_exact("qtail.vacuous", report.vacuous ? 1.0 : 0.0);
  return {sink.finish(), false};
}

RunOutcome run_binomial(const ExperimentConfig& config) {
  RecordSink sink(config);
  const cond::BinomialBound bb =
      cond::binomial_tail(config.get<std::uint64_t>("n"), config.get<std::uint64_t>("k"));
  sink.add_exact("binom.exact", bb.exact);
  sink.add_exact("binom.bound", bb.bound);
  sink.add_exact("binom.holds", bb.exact <= bb.bound ? 1.0 : 0.0);
  return {sink.finish(), bb.exact > bb.bound};
}

}  // namespace

RunOutcome run(const ExperimentConfig& config) {
  const std::string& e = config.experiment;
  if (e == "solomon") return run_solomon(config);
  if (e == "simulate") return run_simulate(config);
  if (e == "exit-prob") return run_exit_prob(config);
  if (e == "check-pbox") return run_check_pbox(config);
  if (e == "decay") return run_decay(config);
  if (e == "slab-decay") return run_slab_decay(config);
  if (e == "rho") return run_rho(config);
  if (e == "effective-criterion") return run_effective_criterion(config);
  if (e == "schedule") return run_schedule(config);
  if (e == "audit-constants") return run_audit(config);
  if (e == "renorm") return run_renorm(config);
  if (e == "coloring") return run_coloring(config);
  if (e == "quenched-tail") return run_quenched_tail(config);
  if (e == "binomial-bound") return run_binomial(config);
  throw ConfigError("unknown experiment: " + e);
}

}  // namespace rwre::harness
