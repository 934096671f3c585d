#include <rwre/conditions/rho.hpp>

#include <rwre/parallel.hpp>
#include <rwre/stats.hpp>
#include <rwre/walk/simulate.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace rwre::cond {

namespace {

constexpr std::uint64_t kEnvSalt = 0x52484fu;

RhoSample sample_from_front_prob(double p_front, double a) {
  if (!(p_front > 0.0)) {
    throw NumericalError("rho_moment: zero frontal probability (rho = infinity)");
  }
  RhoSample s;
  s.p_front = p_front;
  s.log_p_front = std::log(p_front);
  s.rho = (1.0 - p_front) / p_front;
  s.rho_pow_a = a == 0.0 ? 1.0 : std::pow(s.rho, a);
  return s;
}

}  // namespace

nlohmann::json RhoMomentResult::to_json() const {
  nlohmann::json j;
  j["a"] = a;
  j["env_trials"] = env_trials;
  j["exact_per_env"] = exact_per_env;
  j["mean"] = mean;
  j["ci"] = {ci_lo, ci_hi};
  j["box"] = box;
  return j;
}

RhoMomentResult rho_moment(const env::EnvironmentLaw& law, const geom::BoxSpecification& box,
                           double a, std::uint64_t env_trials, RhoMode mode, std::uint64_t seed,
                           std::uint64_t mc_walks_per_env, int threads,
                           const solver::SolveOptions& solve) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("rho_moment: a must be in [0,1]");
  if (env_trials < 1) throw std::invalid_argument("rho_moment: env_trials must be >= 1");
  const Site origin = zero_site(law.d());
  if (!box.contains(origin)) throw std::invalid_argument("rho_moment: origin not inside the box");

  const solver::RegionView view = solver::make_view(box);
  const std::uint64_t envs = law.deterministic() ? 1 : env_trials;

  auto partials = par::map_chunks<std::vector<RhoSample>>(
      envs, threads, 4, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        std::vector<RhoSample> part;
        for (std::uint64_t e = lo; e < hi; ++e) {
          env::Environment environment(law, rng::mix(rng::mix(seed, kEnvSalt), e));
          double p_front;
          if (mode == RhoMode::ExactPerEnv) {
            p_front = solver::solve_exit_field(environment, view, origin, solve).prob(origin, 0);
          } else {
            // Frontal-exit frequency from walks inside this fixed environment.
            std::uint64_t front = 0;
            const walk::StoppingSpec spec = walk::StoppingSpec::first_of(
                {walk::StoppingSpec::exit_region(
                     [&box](const Site& y) { return box.contains(y); }, "box"),
                 walk::StoppingSpec::step_cap(1'000'000)});
            for (std::uint64_t t = 0; t < mc_walks_per_env; ++t) {
              rng::Stream stream = walk::trajectory_stream(rng::mix(seed, e), t);
              const walk::TrajectoryOutcome outcome =
                  walk::simulate_until(environment, origin, spec, stream, {.record_path = false});
              if (!outcome.censored &&
                  box.classify(outcome.final()) == geom::PointClass::FrontBoundary) {
                ++front;
              }
            }
            p_front = static_cast<double>(front) / static_cast<double>(mc_walks_per_env);
          }
          part.push_back(sample_from_front_prob(p_front, a));
        }
        return part;
      });

  RhoMomentResult result;
  result.a = a;
  result.env_trials = envs;
  result.exact_per_env = mode == RhoMode::ExactPerEnv;
  result.box = box.to_json();
  for (auto& p : partials) {
    result.samples.insert(result.samples.end(), p.begin(), p.end());
  }
  std::vector<double> values;
  values.reserve(result.samples.size());
  for (const auto& s : result.samples) values.push_back(s.rho_pow_a);
  result.mean = stats::mean(values);
  if (law.deterministic()) {
    result.ci_lo = result.ci_hi = result.mean;
  } else {
    const stats::Interval ci = stats::mean_ci99(values);
    result.ci_lo = std::max(0.0, ci.lo);
    result.ci_hi = ci.hi;
  }
  return result;
}

nlohmann::json RhoDecomposition::to_json() const {
  nlohmann::json j;
  j["e0"] = e0;
  j["ej"] = ej;
  j["en"] = en;
  j["total"] = total;
  j["counts"] = counts;
  return j;
}

RhoDecomposition rho_decomposition(const std::vector<RhoSample>& samples,
                                   const ParameterSchedule& schedule) {
  if (samples.empty()) throw std::invalid_argument("rho_decomposition: no samples");
  const int n = schedule.n_L;
  RhoDecomposition dec;
  dec.ej.assign(static_cast<std::size_t>(std::max(0, n - 1)), 0.0);
  dec.counts.assign(static_cast<std::size_t>(n) + 1, 0);

  const double ue_floor = -schedule.c1 * schedule.L;
  std::vector<double> bin_sums(static_cast<std::size_t>(n) + 1, 0.0);
  for (const auto& s : samples) {
    if (!(s.log_p_front > ue_floor)) {
      throw NumericalError("rho_decomposition: sample violates the uniform-ellipticity floor");
    }
    int bin = n;  // bottom bin: log p <= threshold(n)
    if (s.log_p_front > schedule.bin_threshold_log(1)) {
      bin = 0;
    } else {
      for (int j = 1; j <= n - 1; ++j) {
        if (s.log_p_front > schedule.bin_threshold_log(j + 1) &&
            s.log_p_front <= schedule.bin_threshold_log(j)) {
          bin = j;
          break;
        }
      }
    }
    bin_sums[static_cast<std::size_t>(bin)] += s.rho_pow_a;
    ++dec.counts[static_cast<std::size_t>(bin)];
  }

  const double m = static_cast<double>(samples.size());
  dec.e0 = bin_sums[0] / m;
  for (int j = 1; j <= n - 1; ++j) dec.ej[static_cast<std::size_t>(j - 1)] = bin_sums[static_cast<std::size_t>(j)] / m;
  dec.en = bin_sums[static_cast<std::size_t>(n)] / m;
  dec.total = dec.e0 + dec.en;
  for (double v : dec.ej) dec.total += v;
  return dec;
}

double criterion_factor(int d, double kappa, double L, double l_tilde, double c3) {
  const int dm1 = d - 1;
  return c3 * std::pow(std::log(1.0 / kappa), 3.0 * dm1) * std::pow(l_tilde, dm1) *
         std::pow(L, 3.0 * dm1 + 1.0);
}

nlohmann::json EffectiveCriterionReport::to_json() const {
  nlohmann::json j;
  j["d"] = d;
  j["kappa"] = kappa;
  j["c3"] = c3;
  j["c2"] = c2;
  j["min_value"] = min_value;
  j["min_value_hi"] = min_value_hi;
  j["satisfied"] = satisfied;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : cells) {
    cs.push_back({{"L", c.L},
                  {"l_tilde", c.l_tilde},
                  {"a", c.a},
                  {"rho_mean", c.rho_mean},
                  {"rho_hi", c.rho_hi},
                  {"value", c.value},
                  {"value_hi", c.value_hi},
                  {"env_trials", c.env_trials}});
  }
  j["cells"] = cs;
  return j;
}

EffectiveCriterionReport effective_criterion(const env::EnvironmentLaw& law,
                                             const geom::DirectionFrame& frame,
                                             const std::vector<double>& L_grid,
                                             const std::vector<double>& l_tilde,
                                             const std::vector<double>& a_grid, double c3,
                                             std::uint64_t env_trials, RhoMode mode,
                                             std::uint64_t seed, int threads, double c2,
                                             const solver::SolveOptions& solve) {
  if (L_grid.empty() || a_grid.empty()) {
    throw std::invalid_argument("effective_criterion: empty grid");
  }
  if (L_grid.size() != l_tilde.size()) {
    throw std::invalid_argument("effective_criterion: L grid and Ltilde list must align");
  }
  // kappa enters through (ln 1/kappa)^{3(d-1)}, which is identically 1 in
  // d = 1; only higher dimensions demand a uniform ellipticity constant.
  if (law.d() >= 2 && !law.kappa()) {
    throw std::invalid_argument("effective_criterion: law carries no uniform ellipticity constant");
  }
  if (law.d() >= 2) {
    const double lt_min = 3.0 * std::sqrt(static_cast<double>(law.d()));
    for (std::size_t i = 0; i < L_grid.size(); ++i) {
      if (!(l_tilde[i] >= lt_min && l_tilde[i] < L_grid[i] * L_grid[i] * L_grid[i])) {
        throw std::invalid_argument("effective_criterion: Ltilde must lie in [3 sqrt(d), L^3)");
      }
    }
  }

  EffectiveCriterionReport report;
  report.d = law.d();
  report.kappa = law.kappa().value_or(1.0);
  report.c3 = c3;
  report.c2 = c2;

  bool first = true;
  for (std::size_t i = 0; i < L_grid.size(); ++i) {
    const double L = L_grid[i];
    const geom::BoxSpecification box = geom::BoxSpecification::for_scale(
        frame, L, std::max(1.0, l_tilde[i]), l_tilde[i] < L * L * L - 1.0);
    for (double a : a_grid) {
      const RhoMomentResult rho =
          rho_moment(law, box, a, env_trials, mode, rng::mix(rng::mix(seed, i), std::llround(a * 1e9)),
                     20000, threads, solve);
      EffectiveCriterionCell cell;
      cell.L = L;
      cell.l_tilde = l_tilde[i];
      cell.a = a;
      cell.rho_mean = rho.mean;
      cell.rho_hi = rho.ci_hi;
      const double factor = criterion_factor(report.d, report.kappa, L, l_tilde[i], c3);
      cell.value = factor * rho.mean;
      cell.value_hi = factor * rho.ci_hi;
      cell.env_trials = rho.env_trials;
      report.cells.push_back(cell);
      if (first || cell.value < report.min_value) report.min_value = cell.value;
      if (first || cell.value_hi < report.min_value_hi) report.min_value_hi = cell.value_hi;
      first = false;
    }
  }
  report.satisfied = report.min_value_hi < 1.0;
  return report;
}

}  // namespace rwre::cond
