#include <rwre/solver/drift_walk.hpp>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <stdexcept>
#include <vector>

namespace rwre::solver {

double drift_walk_hitting(const DriftWalkSpec& spec, std::int64_t start, std::int64_t left_absorb,
                          std::int64_t right_absorb, std::optional<std::int64_t> taboo,
                          const SolveOptions& options) {
  if (spec.right_step < 1 || spec.left_step < 1) {
    throw std::invalid_argument("drift_walk_hitting: step sizes must be >= 1");
  }
  if (!(spec.right_prob_out >= 0.0 && spec.right_prob_out <= 1.0) ||
      !(spec.right_prob_in >= 0.0 && spec.right_prob_in <= 1.0)) {
    throw std::invalid_argument("drift_walk_hitting: probabilities must be in [0,1]");
  }
  if (!(left_absorb < right_absorb)) {
    throw std::invalid_argument("drift_walk_hitting: thresholds out of order");
  }
  if (start >= right_absorb) return 1.0;
  if (start <= left_absorb) return 0.0;
  if (taboo && *taboo == start) return 0.0;

  const std::int64_t n64 = right_absorb - left_absorb - 1;
  if (n64 > 1'000'000) throw NumericalError("drift_walk_hitting: state space exceeds 1e6 states");
  const int n = static_cast<int>(n64);
  auto idx = [&](std::int64_t x) { return static_cast<int>(x - left_absorb - 1); };

  // h(x) = p h(x + r) + (1-p) h(x - s), boundary data 1 right / 0 left.
  Eigen::SparseMatrix<double, Eigen::RowMajor> q(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(n) * 2);
  for (std::int64_t x = left_absorb + 1; x < right_absorb; ++x) {
    const int i = idx(x);
    if (taboo && *taboo == x) continue;  // absorbing with value 0
    const double p = spec.right_prob_at(x);
    const std::int64_t r = x + spec.right_step;
    const std::int64_t l = x - spec.left_step;
    if (r >= right_absorb) {
      b[i] += p;
    } else if (!(taboo && *taboo == r)) {
      trips.emplace_back(i, idx(r), p);
    }
    if (l > left_absorb && !(taboo && *taboo == l)) {
      trips.emplace_back(i, idx(l), 1.0 - p);
    }
  }
  q.setFromTriplets(trips.begin(), trips.end());

  auto residual = [&](const Eigen::VectorXd& h) {
    return (h - (q * h + b)).cwiseAbs().maxCoeff();
  };

  if (static_cast<std::size_t>(n) <= options.direct_max_unknowns) {
    Eigen::SparseMatrix<double> a(n, n);
    std::vector<Eigen::Triplet<double>> at;
    at.reserve(trips.size() + static_cast<std::size_t>(n));
    for (const auto& t : trips) at.emplace_back(t.row(), t.col(), -t.value());
    for (int i = 0; i < n; ++i) at.emplace_back(i, i, 1.0);
    a.setFromTriplets(at.begin(), at.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw NumericalError("drift_walk_hitting: singular system");
    Eigen::VectorXd h = lu.solve(b);
    if (lu.info() != Eigen::Success) throw NumericalError("drift_walk_hitting: solve failed");
    return h[idx(start)];
  }

  Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
  for (std::uint64_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      double acc = b[i];
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(q, i); it; ++it) {
        acc += it.value() * h[it.col()];
      }
      h[i] = acc;
    }
    if (residual(h) <= options.residual_tol) return h[idx(start)];
  }
  throw NumericalError("drift_walk_hitting: Gauss-Seidel did not converge within the sweep cap");
}

}  // namespace rwre::solver
