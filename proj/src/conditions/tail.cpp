#include <rwre/conditions/tail.hpp>

#include <rwre/parallel.hpp>
#include <rwre/stats.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace rwre::cond {

nlohmann::json QuenchedTailReport::to_json() const {
  nlohmann::json j;
  j["L"] = L;
  j["beta"] = beta;
  j["threshold_log"] = threshold_log;
  j["env_trials"] = env_trials;
  j["below"] = below;
  j["empirical"] = empirical;
  j["ci"] = {ci_lo, ci_hi};
  j["bound_log"] = bound_log;
  j["bound"] = bound;
  j["vacuous"] = vacuous;
  j["box"] = box;
  return j;
}

QuenchedTailReport quenched_tail_experiment(const env::EnvironmentLaw& law,
                                            const geom::DirectionFrame& frame, double L,
                                            double beta, std::uint64_t env_trials,
                                            std::uint64_t seed,
                                            std::optional<double> l_tilde_override, int threads,
                                            const solver::SolveOptions& solve,
                                            std::optional<double> kappa_override) {
  const std::optional<double> kappa = kappa_override ? kappa_override : law.kappa();
  if (!kappa) {
    throw std::invalid_argument(
        "quenched_tail_experiment: law carries no ellipticity constant (supply kappa_override)");
  }
  const ParameterSchedule schedule = parameter_schedule(L, law.d(), *kappa);
  if (!(beta > 0)) {
    throw std::invalid_argument("quenched_tail_experiment: beta must be positive");
  }

  const double conforming_lt = L * L * L - 1.0;
  const double lt = l_tilde_override ? *l_tilde_override : conforming_lt;
  const geom::BoxSpecification box =
      geom::BoxSpecification::for_scale(frame, L, lt, lt != conforming_lt);
  const Site origin = zero_site(frame.d);
  const solver::RegionView view = solver::make_view(box);

  QuenchedTailReport report;
  report.L = L;
  report.beta = beta;
  report.threshold_log = std::log(0.5) - schedule.c1 * std::pow(L, beta);
  report.env_trials = env_trials;
  report.box = box.to_json();

  auto partials = par::map_chunks<std::uint64_t>(
      env_trials, threads, 4, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t below = 0;
        for (std::uint64_t e = lo; e < hi; ++e) {
          env::Environment environment(law, rng::mix(rng::mix(seed, 0x5441494cu), e));
          const double p_front =
              solver::solve_exit_field(environment, view, origin, solve).prob(origin, 0);
          const double lp = p_front > 0.0 ? std::log(p_front)
                                          : -std::numeric_limits<double>::infinity();
          if (lp <= report.threshold_log) ++below;
        }
        return below;
      });
  for (std::uint64_t b : partials) report.below += b;
  report.empirical = static_cast<double>(report.below) / static_cast<double>(env_trials);
  const stats::Interval ci = stats::wilson99(report.below, env_trials);
  report.ci_lo = ci.lo;
  report.ci_hi = ci.hi;

  const double five_d = std::pow(5.0, law.d());
  const double m = std::ceil(std::pow(L, beta - schedule.epsilon_L) / five_d);
  report.bound_log = law.d() * std::log(5.0) + 1.0 - std::lgamma(m + 1.0);
  report.bound = std::exp(report.bound_log);
  report.vacuous = report.bound_log >= 0.0;
  return report;
}

BinomialBound binomial_tail(std::uint64_t n, std::uint64_t k) {
  if (n < 1) throw std::invalid_argument("binomial_tail: n must be >= 1");
  if (k > n) throw std::invalid_argument("binomial_tail: k must be <= n");

  BinomialBound out;
  out.n = n;
  out.k = k;

  // P(Y_n >= k) = sum_{j=k}^n C(n,j) n^{-j} (1 - 1/n)^{n-j}, in log space.
  const double nd = static_cast<double>(n);
  const double log_p = -std::log(nd);
  const double log_q = n == 1 ? 0.0 : std::log1p(-1.0 / nd);  // unused when n-j = 0
  double tail = 0.0;
  for (std::uint64_t j = k; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    double lt = std::lgamma(nd + 1.0) - std::lgamma(jd + 1.0) - std::lgamma(nd - jd + 1.0) +
                jd * log_p;
    if (j < n) {
      if (n == 1) continue;  // (1 - 1/n) = 0: the term vanishes
      lt += (nd - jd) * log_q;
    }
    tail += std::exp(lt);
  }
  out.exact = std::min(1.0, tail);
  out.bound = std::exp(1.0 - std::lgamma(static_cast<double>(k) + 1.0));
  return out;
}

}  // namespace rwre::cond
