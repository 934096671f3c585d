#include <rwre/conditions/pbox.hpp>

#include <rwre/parallel.hpp>
#include <rwre/stats.hpp>
#include <rwre/walk/simulate.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rwre::cond {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

constexpr std::uint64_t kEnvSalt = 0x454e56u;
constexpr std::uint64_t kWalkSalt = 0x57414cu;

std::vector<StartEstimate> exact_mode(const env::EnvironmentLaw& law, const geom::Box& box,
                                      const std::vector<Site>& starts, std::uint64_t seed,
                                      const NonfrontalOptions& options) {
  const solver::RegionView view = solver::make_view(box);
  const std::uint64_t envs = law.deterministic() ? 1 : options.env_trials;

  // One field solve per environment yields every start at once.
  struct Partial {
    std::vector<std::vector<double>> per_start;  // [start][env in chunk]
  };
  auto partials = par::map_chunks<Partial>(
      envs, options.threads, 4, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        Partial part;
        part.per_start.resize(starts.size());
        for (std::uint64_t e = lo; e < hi; ++e) {
          env::Environment environment(law, rng::mix(rng::mix(seed, kEnvSalt), e));
          solver::ExitField field = solver::solve_exit_field(environment, view, starts.front(),
                                                             options.solve);
          for (std::size_t s = 0; s < starts.size(); ++s) {
            part.per_start[s].push_back(1.0 - field.prob(starts[s], 0));
          }
        }
        return part;
      });

  std::vector<StartEstimate> out(starts.size());
  for (std::size_t s = 0; s < starts.size(); ++s) {
    std::vector<double> values;
    for (const auto& p : partials) {
      values.insert(values.end(), p.per_start[s].begin(), p.per_start[s].end());
    }
    StartEstimate est;
    est.start = starts[s];
    est.trials = envs;
    est.exact = law.deterministic();
    est.estimate = stats::mean(values);
    if (est.exact) {
      est.ci_lo = est.ci_hi = est.estimate;
    } else {
      const stats::Interval ci = stats::mean_ci99(values);
      est.ci_lo = std::max(0.0, ci.lo);
      est.ci_hi = std::min(1.0, ci.hi);
    }
    out[s] = est;
  }
  return out;
}

std::vector<StartEstimate> mc_mode(const env::EnvironmentLaw& law, const geom::Box& box,
                                   const std::vector<Site>& starts, std::uint64_t seed,
                                   const NonfrontalOptions& options) {
  const walk::StoppingSpec spec = walk::StoppingSpec::first_of(
      {walk::StoppingSpec::exit_region([box](const Site& y) { return box.contains(y); }, "box"),
       walk::StoppingSpec::step_cap(options.step_cap)});

  std::vector<StartEstimate> out(starts.size());
  for (std::size_t s = 0; s < starts.size(); ++s) {
    struct Partial {
      std::uint64_t nonfrontal = 0;
      std::uint64_t censored = 0;
    };
    const std::uint64_t salt = rng::mix(rng::mix(seed, kWalkSalt), s);
    auto partials = par::map_chunks<Partial>(
        options.trials, options.threads, par::kTrialChunk,
        [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
          Partial part;
          for (std::uint64_t t = lo; t < hi; ++t) {
            env::Environment environment(law, rng::mix(rng::mix(salt, kEnvSalt), t));
            rng::Stream stream = walk::trajectory_stream(salt, t);
            const walk::TrajectoryOutcome outcome =
                walk::simulate_until(environment, starts[s], spec, stream, {.record_path = false});
            if (outcome.censored) {
              ++part.censored;
              ++part.nonfrontal;  // censored counts as non-frontal (conservative)
            } else if (box.classify(outcome.final()) != geom::PointClass::FrontBoundary) {
              ++part.nonfrontal;
            }
          }
          return part;
        });
    StartEstimate est;
    est.start = starts[s];
    est.trials = options.trials;
    std::uint64_t hits = 0;
    for (const auto& p : partials) {
      est.censored += p.censored;
      hits += p.nonfrontal;
    }
    est.estimate = options.trials ? static_cast<double>(hits) / static_cast<double>(options.trials) : 0.0;
    const stats::Interval ci = stats::wilson99(hits, options.trials);
    est.ci_lo = ci.lo;
    est.ci_hi = ci.hi;
    out[s] = est;
  }
  return out;
}

}  // namespace

std::vector<StartEstimate> estimate_nonfrontal_annealed(const env::EnvironmentLaw& law,
                                                        const geom::Box& box,
                                                        const std::vector<Site>& starts,
                                                        std::uint64_t seed,
                                                        const NonfrontalOptions& options) {
  if (starts.empty()) throw std::invalid_argument("estimate_nonfrontal_annealed: empty start set");
  for (const Site& s : starts) {
    if (!box.in_middle_frontal(s)) {
      throw std::invalid_argument("estimate_nonfrontal_annealed: start outside the middle frontal part");
    }
  }
  NonfrontalOptions::Mode mode = options.mode;
  if (mode == NonfrontalOptions::Mode::Auto) {
    mode = law.deterministic() ? NonfrontalOptions::Mode::Exact : NonfrontalOptions::Mode::MonteCarlo;
  }
  return mode == NonfrontalOptions::Mode::Exact ? exact_mode(law, box, starts, seed, options)
                                                : mc_mode(law, box, starts, seed, options);
}

nlohmann::json PboxVerdict::to_json() const {
  nlohmann::json j;
  j["N0"] = N0;
  j["M"] = M;
  j["threshold"] = threshold;
  j["sup_estimate"] = sup_estimate;
  j["sup_ci"] = {sup_ci_lo, sup_ci_hi};
  j["verdict"] = to_string(verdict);
  j["partial"] = partial;
  j["starts_evaluated"] = starts.size();
  j["starts_total"] = starts_total;
  nlohmann::json per_start = nlohmann::json::array();
  for (const auto& s : starts) {
    per_start.push_back({{"start", std::vector<std::int64_t>(s.start.data(), s.start.data() + s.start.size())},
                         {"estimate", s.estimate},
                         {"ci", {s.ci_lo, s.ci_hi}},
                         {"exact", s.exact},
                         {"trials", s.trials},
                         {"censored", s.censored}});
  }
  j["starts"] = per_start;
  return j;
}

PboxVerdict check_pbox(const env::EnvironmentLaw& law, std::int64_t N0, double M,
                       const geom::DirectionFrame& frame, std::uint64_t seed,
                       const PboxBudget& budget) {
  if (N0 < 6 || N0 % 6 != 0) throw std::invalid_argument("check_pbox: N0 must be in 6Z, >= 6");
  if (!(M > 0)) throw std::invalid_argument("check_pbox: M must be positive");

  const geom::ScaleSchedule schedule(N0);
  const geom::Box box(zero_site(frame.d), 0, frame, schedule, budget.overrides);
  std::vector<Site> all = box.middle_frontal_sites();
  std::sort(all.begin(), all.end(), SiteLess{});

  PboxVerdict verdict;
  verdict.N0 = N0;
  verdict.M = M;
  verdict.starts_total = all.size();
  verdict.threshold = std::pow(static_cast<double>(N0), -M);

  std::vector<Site> chosen;
  if (all.size() <= budget.max_starts) {
    chosen = all;
  } else {
    verdict.partial = true;
    // Deterministic subgrid plus the extremal corners of the sorted order.
    const std::uint64_t stride =
        (all.size() + budget.max_starts - 1) / std::max<std::uint64_t>(1, budget.max_starts);
    for (std::size_t i = 0; i < all.size(); i += stride) chosen.push_back(all[i]);
    chosen.push_back(all.front());
    chosen.push_back(all.back());
    std::sort(chosen.begin(), chosen.end(), SiteLess{});
    chosen.erase(std::unique(chosen.begin(), chosen.end(), SiteEq{}), chosen.end());
  }

  verdict.starts = estimate_nonfrontal_annealed(law, box, chosen, seed, budget.nonfrontal);
  verdict.sup_estimate = 0;
  verdict.sup_ci_lo = 0;
  verdict.sup_ci_hi = 0;
  for (const auto& s : verdict.starts) {
    verdict.sup_estimate = std::max(verdict.sup_estimate, s.estimate);
    verdict.sup_ci_lo = std::max(verdict.sup_ci_lo, s.ci_lo);
    verdict.sup_ci_hi = std::max(verdict.sup_ci_hi, s.ci_hi);
  }

  if (verdict.sup_ci_hi < verdict.threshold) {
    verdict.verdict = Verdict::Pass;  // partial flag still applies: sup is a lower bound
  } else if (verdict.sup_ci_lo >= verdict.threshold) {
    verdict.verdict = Verdict::Fail;
  } else {
    verdict.verdict = Verdict::Inconclusive;
  }
  return verdict;
}

}  // namespace rwre::cond
