#include <rwre/conditions/goodness.hpp>

#include <rwre/parallel.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rwre::cond {

nlohmann::json GoodnessCertificate::to_json() const {
  nlohmann::json j;
  j["anchor"] = std::vector<std::int64_t>(anchor.data(), anchor.data() + anchor.size());
  j["level"] = level;
  j["good"] = good;
  j["threshold"] = threshold;
  if (level == 0) j["attained_inf"] = attained_inf;
  if (witness) {
    j["witness"] = std::vector<std::int64_t>(witness->data(), witness->data() + witness->size());
  }
  j["bad_subboxes"] = bad_subboxes.size();
  return j;
}

std::optional<int> find_goodness_witness(int num_candidates, const std::vector<int>& bad,
                                         const std::function<bool(int, int)>& intersects) {
  if (num_candidates <= 0) return std::nullopt;
  if (bad.empty()) return 0;
  for (int c = 0; c < num_candidates; ++c) {
    if (!intersects(c, bad.front())) continue;
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

GoodnessClassifier::GoodnessClassifier(env::Environment environment, geom::DirectionFrame frame,
                                       geom::ScaleSchedule schedule, geom::BoxOverrides overrides,
                                       solver::SolveOptions solve, std::uint64_t budget)
    : environment_(std::move(environment)),
      frame_(std::move(frame)),
      schedule_(schedule),
      overrides_(overrides),
      solve_(solve),
      budget_(budget) {}

GoodnessCertificate GoodnessClassifier::classify(const Site& anchor, int level) {
  const std::vector<std::int64_t> key_coords(anchor.data(), anchor.data() + anchor.size());
  const auto key = std::make_pair(level, key_coords);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  GoodnessCertificate cert;
  cert.anchor = anchor;
  cert.level = level;
  cert.threshold = 1.0 - std::pow(static_cast<double>(schedule_.n0()), -5.0);

  if (level == 0) {
    if (++solves_used_ > budget_) throw std::runtime_error("GoodnessClassifier: budget exceeded");
    const geom::Box box(anchor, 0, frame_, schedule_, overrides_);
    const solver::RegionView view = solver::make_view(box);
    const std::vector<Site> starts = box.middle_frontal_sites();
    const solver::ExitField field =
        solver::solve_exit_field(environment_, view, starts.front(), solve_);
    double inf = 1.0;
    for (const Site& s : starts) inf = std::min(inf, field.prob(s, 0));
    cert.attained_inf = inf;
    cert.good = inf >= cert.threshold;
  } else {
    const geom::BoxFamily sub_family(frame_, schedule_, level - 1, overrides_);
    const geom::Box box(anchor, level, frame_, schedule_, overrides_);
    const std::vector<Site> candidates = sub_family.anchors_intersecting(box);
    std::vector<geom::Box> boxes;
    boxes.reserve(candidates.size());
    for (const Site& c : candidates) boxes.push_back(sub_family.box_at(c));

    std::vector<int> bad;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!classify(candidates[i], level - 1).good) {
        bad.push_back(static_cast<int>(i));
        cert.bad_subboxes.push_back(candidates[i]);
      }
    }
    const auto witness = find_goodness_witness(
        static_cast<int>(candidates.size()), bad,
        [&](int i, int j) { return geom::boxes_intersect(boxes[static_cast<std::size_t>(i)],
                                                         boxes[static_cast<std::size_t>(j)]); });
    cert.good = witness.has_value();
    if (witness) cert.witness = candidates[static_cast<std::size_t>(*witness)];
  }

  memo_.emplace(key, cert);
  return cert;
}

nlohmann::json GoodnessExperiment::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["N0"] = N0;
  j["env_trials"] = env_trials;
  j["good"] = good;
  j["p_hat"] = p_hat;
  j["ci"] = {ci_lo, ci_hi};
  j["bound"] = bound;
  j["union_rhs_mean"] = union_rhs_mean;
  j["union_bound_ok"] = union_bound_ok;
  j["chain_rhs"] = chain_rhs;
  return j;
}

GoodnessExperiment goodness_experiment(const env::EnvironmentLaw& law, int k, std::int64_t N0,
                                       std::uint64_t env_trials, std::uint64_t seed,
                                       const geom::DirectionFrame& frame,
                                       geom::BoxOverrides overrides, int threads,
                                       const solver::SolveOptions& solve) {
  if (env_trials < 1) throw std::invalid_argument("goodness_experiment: env_trials must be >= 1");
  const geom::ScaleSchedule schedule(N0);
  const geom::BoxFamily family(frame, schedule, k, overrides);
  const Site anchor = family.assign(zero_site(frame.d));
  const double n05 = std::pow(static_cast<double>(N0), -5.0);

  struct Partial {
    std::uint64_t good = 0;
    std::vector<double> union_rhs;           // per environment
    std::vector<double> nonfrontal_by_start; // flattened start-major sums
    std::uint64_t envs = 0;
    std::size_t starts = 0;
  };
  auto partials = par::map_chunks<Partial>(
      env_trials, threads, 4, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        Partial part;
        for (std::uint64_t e = lo; e < hi; ++e) {
          env::Environment environment(law, rng::mix(rng::mix(seed, 0x474f4f44u), e));
          GoodnessClassifier classifier(environment, frame, schedule, overrides, solve);
          const GoodnessCertificate cert = classifier.classify(anchor, k);
          if (cert.good) ++part.good;
          ++part.envs;
          if (k == 0) {
            const geom::Box box(anchor, 0, frame, schedule, overrides);
            const solver::RegionView view = solver::make_view(box);
            const std::vector<Site> starts = box.middle_frontal_sites();
            const solver::ExitField field =
                solver::solve_exit_field(environment, view, starts.front(), solve);
            part.starts = starts.size();
            if (part.nonfrontal_by_start.empty()) part.nonfrontal_by_start.assign(starts.size(), 0.0);
            double rhs = 0.0;
            for (std::size_t s = 0; s < starts.size(); ++s) {
              const double nonfrontal = 1.0 - field.prob(starts[s], 0);
              if (nonfrontal >= n05) rhs += 1.0;
              part.nonfrontal_by_start[s] += nonfrontal;
            }
            part.union_rhs.push_back(rhs);
          }
        }
        return part;
      });

  GoodnessExperiment exp;
  exp.k = k;
  exp.N0 = N0;
  exp.env_trials = env_trials;
  std::vector<double> union_rhs;
  std::vector<double> nonfrontal_sums;
  std::size_t starts_count = 0;
  for (const auto& p : partials) {
    exp.good += p.good;
    union_rhs.insert(union_rhs.end(), p.union_rhs.begin(), p.union_rhs.end());
    if (k == 0 && p.starts > 0) {
      starts_count = p.starts;
      if (nonfrontal_sums.empty()) nonfrontal_sums.assign(p.starts, 0.0);
      for (std::size_t s = 0; s < p.starts; ++s) nonfrontal_sums[s] += p.nonfrontal_by_start[s];
    }
  }
  exp.p_hat = static_cast<double>(exp.good) / static_cast<double>(env_trials);
  const stats::Interval ci = stats::wilson99(exp.good, env_trials);
  exp.ci_lo = ci.lo;
  exp.ci_hi = ci.hi;
  exp.bound = 1.0 - std::exp(-std::pow(2.0, k));

  if (k == 0) {
    exp.union_rhs_mean = stats::mean(union_rhs);
    exp.union_bound_ok = (1.0 - exp.p_hat) <= exp.union_rhs_mean + 1e-12;
    double sup_nonfrontal = 0.0;
    for (double s : nonfrontal_sums) {
      sup_nonfrontal = std::max(sup_nonfrontal, s / static_cast<double>(env_trials));
    }
    exp.chain_rhs = 1.0 - static_cast<double>(starts_count) *
                              std::pow(static_cast<double>(N0), 5.0) * sup_nonfrontal;
  }
  return exp;
}

}  // namespace rwre::cond
