#include <rwre/solver/exit.hpp>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <deque>
#include <iostream>
#include <mutex>

namespace rwre::solver {

namespace {

int box_part(const geom::Box& box, const Site& y) {
  switch (box.classify(y)) {
    case geom::PointClass::FrontBoundary: return 0;
    case geom::PointClass::BackBoundary: return 1;
    default: return 2;
  }
}

template <typename Region>
int front_other_part(const Region& r, const Site& y) {
  return r.classify(y) == geom::PointClass::FrontBoundary ? 0 : 1;
}

}  // namespace

RegionView make_view(const geom::Box& box) {
  RegionView v;
  v.inside = [box](const Site& y) { return box.contains(y); };
  v.boundary_part = [box](const Site& y) { return box_part(box, y); };
  v.part_names = {"front", "back", "side"};
  v.description = box.to_json();
  return v;
}

RegionView make_view(const geom::Slab& slab) {
  RegionView v;
  v.inside = [slab](const Site& y) { return slab.contains(y); };
  v.boundary_part = [slab](const Site& y) { return front_other_part(slab, y); };
  v.part_names = {"front", "other"};
  v.description = slab.to_json();
  return v;
}

RegionView make_view(const geom::Parallelogram& par) {
  RegionView v;
  v.inside = [par](const Site& y) { return par.contains(y); };
  v.boundary_part = [par](const Site& y) { return front_other_part(par, y); };
  v.part_names = {"front", "other"};
  v.description = par.to_json();
  return v;
}

RegionView make_view(const geom::BoxSpecification& box) {
  RegionView v;
  v.inside = [box](const Site& y) { return box.contains(y); };
  v.boundary_part = [box](const Site& y) { return front_other_part(box, y); };
  v.part_names = {"front", "other"};
  v.description = box.to_json();
  return v;
}

RegionView interval_view(std::int64_t lo, std::int64_t hi) {
  RegionView v;
  v.inside = [lo, hi](const Site& y) { return lo < y[0] && y[0] < hi; };
  v.boundary_part = [hi](const Site& y) { return y[0] >= hi ? 0 : 1; };
  v.part_names = {"front", "back"};
  v.description = {{"kind", "interval"}, {"lo", lo}, {"hi", hi}};
  return v;
}

int ExitField::index_of(const Site& x) const {
  auto it = index_.find(x);
  return it == index_.end() ? -1 : it->second;
}

double ExitField::prob(const Site& x, int part) const {
  const int i = index_of(x);
  if (i < 0) throw std::invalid_argument("ExitField::prob: site is not interior");
  return h(i, part);
}

ExitField solve_exit_field(const env::Environment& environment, const RegionView& view,
                           const Site& start, const SolveOptions& options) {
  if (!view.inside(start)) throw std::invalid_argument("solve_exit_field: start is not interior");
  const int d = environment.d();
  const int parts = static_cast<int>(view.part_names.size());

  if (options.warn_nonelliptic && !environment.law().uniformly_elliptic()) {
    static std::once_flag warned;
    std::call_once(warned, [] {
      std::cerr << "[rwre] warning: exact solve on a law without a uniform ellipticity floor\n";
    });
  }

  // Flood fill of the interior reachable from the start.
  std::unordered_map<Site, int, SiteHash, SiteEq> seen;
  std::deque<Site> queue;
  seen.emplace(start, 0);
  queue.push_back(start);
  std::vector<Site> sites{start};
  while (!queue.empty()) {
    Site x = queue.front();
    queue.pop_front();
    for (int k = 0; k < 2 * d; ++k) {
      Site y = x + step_for_index(d, k);
      if (!view.inside(y) || seen.count(y)) continue;
      if (sites.size() >= options.max_states) {
        throw NumericalError("solve_exit_field: state space exceeds max_states");
      }
      seen.emplace(y, 0);
      sites.push_back(y);
      queue.push_back(y);
    }
  }
  std::sort(sites.begin(), sites.end(), SiteLess{});

  ExitField field;
  field.interior = std::move(sites);
  field.part_names = view.part_names;
  const int n = static_cast<int>(field.interior.size());
  field.index_.reserve(field.interior.size());
  for (int i = 0; i < n; ++i) field.index_.emplace(field.interior[i], i);

  // h = Q h + B with Q the interior-to-interior kernel weights and
  // B(i, p) the one-step mass into boundary part p.
  Eigen::SparseMatrix<double, Eigen::RowMajor> q(n, n);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, parts);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(n) * 2 * d);
  for (int i = 0; i < n; ++i) {
    const Site& x = field.interior[i];
    const env::TransitionKernel kern = environment.kernel_at(x);
    for (int k = 0; k < 2 * d; ++k) {
      const double w = kern.w[k];
      if (w == 0.0) continue;
      Site y = x + step_for_index(d, k);
      auto it = field.index_.find(y);
      if (it != field.index_.end()) {
        trips.emplace_back(i, it->second, w);
      } else {
        const int p = view.boundary_part(y);
        if (p < 0 || p >= parts) throw std::logic_error("solve_exit_field: bad boundary part id");
        b(i, p) += w;
      }
    }
  }
  q.setFromTriplets(trips.begin(), trips.end());

  auto linf_residual = [&](const Eigen::MatrixXd& h) {
    Eigen::MatrixXd r = h - (q * h + b);
    return r.cwiseAbs().maxCoeff();
  };

  if (static_cast<std::size_t>(n) <= options.direct_max_unknowns) {
    Eigen::SparseMatrix<double> a(n, n);
    {
      std::vector<Eigen::Triplet<double>> at;
      at.reserve(trips.size() + static_cast<std::size_t>(n));
      for (const auto& t : trips) at.emplace_back(t.row(), t.col(), -t.value());
      for (int i = 0; i < n; ++i) at.emplace_back(i, i, 1.0);
      // duplicate (i,i) entries sum up, handling self-loops of weight w
      a.setFromTriplets(at.begin(), at.end());
    }
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) {
      throw NumericalError("solve_exit_field: singular system (zero-probability pathology)");
    }
    field.h = lu.solve(b);
    if (lu.info() != Eigen::Success) {
      throw NumericalError("solve_exit_field: direct solve failed");
    }
    field.direct = true;
    field.residual_linf = linf_residual(field.h);
    return field;
  }

  // Gauss-Seidel sweeps in fixed index order.
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, parts);
  for (std::uint64_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      for (int p = 0; p < parts; ++p) {
        double acc = b(i, p);
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(q, i); it; ++it) {
          acc += it.value() * h(it.col(), p);
        }
        h(i, p) = acc;
      }
    }
    if (linf_residual(h) <= options.residual_tol) {
      field.h = std::move(h);
      field.direct = false;
      field.residual_linf = linf_residual(field.h);
      return field;
    }
  }
  throw NumericalError("solve_exit_field: Gauss-Seidel did not converge within the sweep cap");
}

nlohmann::json ExitDistribution::to_json() const {
  nlohmann::json j;
  j["region"] = region;
  nlohmann::json probs;
  for (std::size_t i = 0; i < part_names.size(); ++i) probs[part_names[i]] = probabilities[i];
  j["probabilities"] = probs;
  j["residual"] = residual;
  j["direct"] = direct;
  j["unknowns"] = unknowns;
  return j;
}

ExitDistribution quenched_exit_split(const env::Environment& environment, const RegionView& view,
                                     const Site& start, const SolveOptions& options) {
  ExitField field = solve_exit_field(environment, view, start, options);
  ExitDistribution dist;
  dist.region = view.description;
  dist.part_names = field.part_names;
  dist.direct = field.direct;
  dist.unknowns = field.interior.size();
  double sum = 0.0;
  for (std::size_t p = 0; p < field.part_names.size(); ++p) {
    const double v = field.prob(start, static_cast<int>(p));
    dist.probabilities.push_back(v);
    sum += v;
  }
  dist.residual = std::abs(1.0 - sum);
  return dist;
}

}  // namespace rwre::solver
