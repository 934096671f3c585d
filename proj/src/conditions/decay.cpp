#include <rwre/conditions/decay.hpp>

#include <rwre/parallel.hpp>
#include <rwre/stats.hpp>
#include <rwre/walk/simulate.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace rwre::cond {

namespace {

constexpr std::uint64_t kEnvSalt = 0x454e56u;

struct Counts {
  std::uint64_t hits = 0;
  std::uint64_t censored = 0;
};

Counts run_event_trials(const env::EnvironmentLaw& law, const walk::StoppingSpec& spec,
                        int event_index, std::uint64_t trials, std::uint64_t salt, int threads) {
  const Site origin = zero_site(law.d());
  auto partials = par::map_chunks<Counts>(
      trials, threads, par::kTrialChunk, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        Counts part;
        for (std::uint64_t t = lo; t < hi; ++t) {
          env::Environment environment(law, rng::mix(rng::mix(salt, kEnvSalt), t));
          rng::Stream stream = walk::trajectory_stream(salt, t);
          const walk::TrajectoryOutcome outcome =
              walk::simulate_until(environment, origin, spec, stream, {.record_path = false});
          if (outcome.censored) {
            ++part.censored;
            ++part.hits;  // conservative for an upper-bound estimate
          } else if (outcome.stop_index == event_index) {
            ++part.hits;
          }
        }
        return part;
      });
  Counts total;
  for (const auto& p : partials) {
    total.hits += p.hits;
    total.censored += p.censored;
  }
  return total;
}

}  // namespace

nlohmann::json DecayCurve::to_json() const {
  nlohmann::json j;
  j["l_prime"] = std::vector<double>(l_prime.data(), l_prime.data() + l_prime.size());
  j["b"] = b;
  j["poly_slope"] = poly_slope;
  j["stretched_exponent"] = stretched_exponent;
  j["fit_points"] = fit_points;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) {
    pts.push_back({{"L", p.L},
                   {"estimate", p.estimate},
                   {"ci", {p.ci_lo, p.ci_hi}},
                   {"trials", p.trials},
                   {"hits", p.hits},
                   {"censored", p.censored}});
  }
  j["points"] = pts;
  return j;
}

DecayCurve decay_curve(const env::EnvironmentLaw& law, const Vec& l_prime, double b,
                       const std::vector<double>& L_list, std::uint64_t trials,
                       std::uint64_t seed, std::uint64_t step_cap, int threads) {
  if (!(b > 0)) throw std::invalid_argument("decay_curve: b must be positive");
  if (trials < 1) throw std::invalid_argument("decay_curve: trials must be >= 1");
  for (std::size_t i = 1; i < L_list.size(); ++i) {
    if (!(L_list[i] > L_list[i - 1])) {
      throw std::invalid_argument("decay_curve: L values must be strictly increasing");
    }
  }

  DecayCurve curve;
  curve.l_prime = l_prime;
  curve.b = b;

  for (std::size_t i = 0; i < L_list.size(); ++i) {
    const double L = L_list[i];
    const walk::StoppingSpec spec = walk::StoppingSpec::first_of(
        {walk::StoppingSpec::enter_half_space(-l_prime, b * L),
         walk::StoppingSpec::enter_half_space(l_prime, L),
         walk::StoppingSpec::step_cap(step_cap)});
    const Counts c = run_event_trials(law, spec, 0, trials, rng::mix(rng::mix(seed, 0xDECA), i), threads);
    DecayPoint point;
    point.L = L;
    point.trials = trials;
    point.hits = c.hits;
    point.censored = c.censored;
    point.estimate = static_cast<double>(c.hits) / static_cast<double>(trials);
    const stats::Interval ci = stats::wilson99(c.hits, trials);
    point.ci_lo = ci.lo;
    point.ci_hi = ci.hi;
    curve.points.push_back(point);
  }

  std::vector<double> ln_l, ln_p, ln_ln_p;
  for (const auto& p : curve.points) {
    if (p.hits == 0 || p.estimate >= 1.0) continue;  // "< 1/trials" cells are not fit
    ln_l.push_back(std::log(p.L));
    ln_p.push_back(std::log(p.estimate));
    ln_ln_p.push_back(std::log(-std::log(p.estimate)));
  }
  curve.fit_points = static_cast<int>(ln_l.size());
  if (curve.fit_points >= 2) {
    curve.poly_slope = -stats::fit_line(ln_l, ln_p).slope;
    curve.stretched_exponent = stats::fit_line(ln_l, ln_ln_p).slope;
  }
  return curve;
}

nlohmann::json SlabDecayReport::to_json() const {
  nlohmann::json j;
  j["L"] = L;
  j["estimate"] = estimate;
  j["ci"] = {ci_lo, ci_hi};
  j["trials"] = trials;
  j["nonfrontal"] = nonfrontal;
  j["censored"] = censored;
  j["gamma_hat"] = gamma_hat;
  j["gamma_target"] = gamma_target;
  return j;
}

SlabDecayReport slab_decay(const env::EnvironmentLaw& law, const geom::DirectionFrame& frame,
                           double L, std::uint64_t trials, std::uint64_t seed,
                           std::uint64_t step_cap, int threads) {
  const geom::Slab slab = geom::Slab::make_d(frame, L);
  const Site origin = zero_site(frame.d);
  if (!slab.contains(origin)) throw std::invalid_argument("slab_decay: origin not inside the slab");

  const walk::StoppingSpec spec = walk::StoppingSpec::first_of(
      {walk::StoppingSpec::exit_region([slab](const Site& y) { return slab.contains(y); }, "slab"),
       walk::StoppingSpec::step_cap(step_cap)});

  struct Partial {
    std::uint64_t nonfrontal = 0;
    std::uint64_t censored = 0;
  };
  auto partials = par::map_chunks<Partial>(
      trials, threads, par::kTrialChunk, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        Partial part;
        for (std::uint64_t t = lo; t < hi; ++t) {
          env::Environment environment(law, rng::mix(rng::mix(seed, kEnvSalt), t));
          rng::Stream stream = walk::trajectory_stream(seed, t);
          const walk::TrajectoryOutcome outcome =
              walk::simulate_until(environment, origin, spec, stream, {.record_path = false});
          if (outcome.censored) {
            ++part.censored;
            ++part.nonfrontal;
          } else if (slab.classify(outcome.final()) != geom::PointClass::FrontBoundary) {
            ++part.nonfrontal;
          }
        }
        return part;
      });

  SlabDecayReport report;
  report.L = L;
  report.trials = trials;
  for (const auto& p : partials) {
    report.nonfrontal += p.nonfrontal;
    report.censored += p.censored;
  }
  report.estimate = static_cast<double>(report.nonfrontal) / static_cast<double>(trials);
  const stats::Interval ci = stats::wilson99(report.nonfrontal, trials);
  report.ci_lo = ci.lo;
  report.ci_hi = ci.hi;
  report.gamma_target = std::log(2.0) / std::log(std::log(L));
  if (report.estimate > 0.0 && report.estimate < 1.0) {
    report.gamma_hat = std::log(-std::log(report.estimate)) / std::log(L);
  }
  return report;
}

}  // namespace rwre::cond
