#pragma once

#include <rwre/environment/environment.hpp>
#include <rwre/geometry/regions.hpp>

#include <nlohmann/json.hpp>

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace rwre::solver {

/// What the exit solver needs from a region: interior membership, and the
/// boundary-part id of any outside site reachable in one step from the
/// interior.
struct RegionView {
  std::function<bool(const Site&)> inside;
  std::function<int(const Site&)> boundary_part;
  std::vector<std::string> part_names;
  nlohmann::json description;
};

/// Part order front/back/side.
RegionView make_view(const geom::Box& box);
/// Part order front/other.
RegionView make_view(const geom::Slab& slab);
RegionView make_view(const geom::Parallelogram& par);
RegionView make_view(const geom::BoxSpecification& box);
/// d = 1 open interval (lo, hi); parts front (>= hi) and back (<= lo).
RegionView interval_view(std::int64_t lo, std::int64_t hi);

struct SolveOptions {
  double residual_tol = 1e-10;
  std::uint64_t max_sweeps = 1'000'000;
  std::size_t direct_max_unknowns = 50'000;
  std::size_t max_states = 4'000'000;
  bool warn_nonelliptic = true;
};

/// Harmonic field h_p(x) = P_{x,omega}(exit through part p) for every interior
/// site simultaneously, one column per boundary part. Small systems are
/// eliminated directly (sparse LU); larger ones run deterministic Gauss-Seidel
/// sweeps to the residual tolerance.
class ExitField {
 public:
  std::vector<Site> interior;  // sorted lexicographically
  Eigen::MatrixXd h;           // interior x parts
  std::vector<std::string> part_names;
  double residual_linf = 0.0;
  bool direct = false;

  int index_of(const Site& x) const;
  double prob(const Site& x, int part) const;

 private:
  friend ExitField solve_exit_field(const env::Environment&, const RegionView&, const Site&,
                                    const SolveOptions&);
  std::unordered_map<Site, int, SiteHash, SiteEq> index_;
};

ExitField solve_exit_field(const env::Environment& environment, const RegionView& view,
                           const Site& start, const SolveOptions& options = {});

/// Quenched exit distribution over the boundary parts from one start.
struct ExitDistribution {
  nlohmann::json region;
  std::vector<std::string> part_names;
  std::vector<double> probabilities;
  double residual = 0.0;  // |1 - sum of parts|
  bool direct = false;
  std::size_t unknowns = 0;

  nlohmann::json to_json() const;
};

ExitDistribution quenched_exit_split(const env::Environment& environment, const RegionView& view,
                                     const Site& start, const SolveOptions& options = {});

}  // namespace rwre::solver
