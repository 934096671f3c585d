#pragma once

#include <rwre/geometry/frame.hpp>
#include <rwre/geometry/scales.hpp>
#include <rwre/types.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace rwre::geom {

enum class PointClass {
  Interior,
  MiddleFrontal,
  FrontBoundary,
  BackBoundary,
  SideBoundary,
  BoundaryOther,
  Outside,
};

const char* to_string(PointClass c);

/// Axis-aligned window of lattice points, both ends inclusive.
struct LatticeWindow {
  Site lo;
  Site hi;

  int d() const { return static_cast<int>(lo.size()); }
  bool contains(const Site& y) const;
  std::uint64_t size() const;
  void for_each(const std::function<void(const Site&)>& fn) const;
};

/// Integer window guaranteed to contain every lattice point y with
/// c_lo <= (y - anchor) . l <= c_hi and |(y - anchor) . l_j| <= t_bound.
LatticeWindow frame_bounding_window(const DirectionFrame& frame, const Site& anchor,
                                    double c_lo, double c_hi, double t_bound);

/// Renormalization box at `level`:
///   B      : -N_k/2 < (y-x).l < N_k,            |(y-x).l_j| < width
///   Btilde : N_k - N_{k-1} <= (y-x).l < N_k,    |(y-x).l_j| < frontal_width
/// with the conforming widths 25 N_k^3 and N_k^3. The transverse widths can be
/// overridden to keep exact solves tractable; such boxes are flagged
/// nonconforming in every serialized description.
struct BoxOverrides {
  std::optional<double> width;           // half-width of B
  std::optional<double> frontal_width;   // half-width of Btilde
  bool any() const { return width.has_value() || frontal_width.has_value(); }
};

class Box {
 public:
  Box(Site anchor, int level, DirectionFrame frame, ScaleSchedule schedule,
      BoxOverrides overrides = {});

  const Site& anchor() const { return anchor_; }
  int level() const { return level_; }
  const DirectionFrame& frame() const { return frame_; }
  const ScaleSchedule& schedule() const { return schedule_; }
  bool nonconforming() const { return overrides_.any(); }
  const BoxOverrides& overrides() const { return overrides_; }

  double nk() const { return nk_; }
  double nkm1() const { return nkm1_; }
  double width() const { return width_; }
  double frontal_width() const { return frontal_width_; }

  bool contains(const Site& y) const;
  bool in_middle_frontal(const Site& y) const;
  bool on_boundary(const Site& y) const;
  PointClass classify(const Site& y) const;

  /// All sites of the middle frontal part (throws if the scan exceeds `cap`).
  std::vector<Site> middle_frontal_sites(std::uint64_t cap = 1u << 22) const;

  nlohmann::json to_json() const;

 private:
  Site anchor_;
  int level_;
  DirectionFrame frame_;
  ScaleSchedule schedule_;
  BoxOverrides overrides_;
  double nk_, nkm1_, width_, frontal_width_;
};

/// Slab regions. Kind D is the wide slab used by the sharpened exit estimate
/// (-L <= x.l <= 10 L with transverse bound L^3 lnln L / ln L, demanding
/// L > e^e); kind S is the strip assembled from scale-k boxes.
class Slab {
 public:
  enum class Kind { D, S };

  static Slab make_d(DirectionFrame frame, double L,
                     std::optional<double> transverse_override = {});
  static Slab make_s(DirectionFrame frame, ScaleSchedule schedule, int k_index,
                     std::optional<double> transverse_override = {});

  Kind kind() const { return kind_; }
  const DirectionFrame& frame() const { return frame_; }
  double lo_l() const { return lo_l_; }
  double hi_l() const { return hi_l_; }
  double transverse_bound() const { return half_t_; }
  bool nonconforming() const { return nonconforming_; }

  bool contains(const Site& y) const;
  bool on_boundary(const Site& y) const;
  PointClass classify(const Site& y) const;  // Interior/FrontBoundary/BoundaryOther/Outside

  nlohmann::json to_json() const;

 private:
  Kind kind_;
  DirectionFrame frame_;
  double lo_l_ = 0, hi_l_ = 0, half_t_ = 0;
  bool nonconforming_ = false;
  double L_ = 0;        // kind D
  int k_index_ = -1;    // kind S
  std::int64_t n0_ = 0; // kind S
};

/// e^e, the domain boundary of lnln.
double euler_ee();

/// Scale index k_L with N_{k_L + 1} + 1 >= L > N_{k_L} + 1.
int k_index_for(const ScaleSchedule& schedule, double L);

/// Parallelogram at scale n (n >= 3 so lnln n is defined and positive):
///   R       : -2n < (y-x).l < 2n,        |(y-x).l_j| < 2 n^3 lnln n/ln n
///   central : -n-1 < (y-x).l < n+1,      |(y-x).l_j| < n^3 lnln n/ln n + 1
///   front   : y in dR, (y-x).l >= 2n,    |(y-x).l_j| < n^3 lnln n/ln n + 1
class Parallelogram {
 public:
  Parallelogram(Site anchor, std::int64_t n, DirectionFrame frame,
                std::optional<double> transverse_override = {});

  const Site& anchor() const { return anchor_; }
  std::int64_t n() const { return n_; }
  const DirectionFrame& frame() const { return frame_; }
  double transverse_scale() const { return wt_; }  // n^3 lnln n / ln n
  bool nonconforming() const { return nonconforming_; }

  bool contains(const Site& y) const;
  bool in_central(const Site& y) const;
  bool on_boundary(const Site& y) const;
  PointClass classify(const Site& y) const;

  nlohmann::json to_json() const;

 private:
  Site anchor_;
  std::int64_t n_;
  DirectionFrame frame_;
  double wt_;
  bool nonconforming_ = false;
};

/// Rotated box specification used by the ratio-of-exit-probabilities
/// machinery: B = {x : -l_minus < x.l < l_plus, |x.l_j| < half_t}, frontal
/// boundary part {x in dB : x.l >= l_plus, |x.l_j| < half_t}. The canonical
/// instance for scale L is (L-2, L+2, Ltilde).
class BoxSpecification {
 public:
  BoxSpecification(DirectionFrame frame, double l_minus, double l_plus, double half_t,
                   bool nonconforming = false);

  static BoxSpecification for_scale(DirectionFrame frame, double L, double l_tilde,
                                    bool nonconforming = false);

  const DirectionFrame& frame() const { return frame_; }
  double l_minus() const { return l_minus_; }
  double l_plus() const { return l_plus_; }
  double half_t() const { return half_t_; }
  bool nonconforming() const { return nonconforming_; }

  bool contains(const Site& y) const;
  bool on_boundary(const Site& y) const;
  PointClass classify(const Site& y) const;  // Interior/FrontBoundary/BoundaryOther/Outside

  nlohmann::json to_json() const;

 private:
  DirectionFrame frame_;
  double l_minus_, l_plus_, half_t_;
  bool nonconforming_;
};

}  // namespace rwre::geom
