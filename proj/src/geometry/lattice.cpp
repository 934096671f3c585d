#include <rwre/geometry/lattice.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rwre::geom {

namespace {

// Floor slop of the coordinatewise floor, measured along any unit direction.
double floor_slack(int d) { return std::sqrt(static_cast<double>(d)) + 1.0; }

std::int64_t floor_div(double v, double s) {
  return static_cast<std::int64_t>(std::floor(v / s));
}

std::int64_t ceil_div(double v, double s) {
  return static_cast<std::int64_t>(std::ceil(v / s));
}

// Integer window containing every y whose frame coordinates lie in the given
// absolute ranges ranges[j] = [lo_j, hi_j] (range 0 is the l-coordinate).
LatticeWindow window_from_frame_ranges(const DirectionFrame& f,
                                       const std::vector<std::pair<double, double>>& ranges) {
  const int d = f.d;
  Site lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    double mn = 0.0, mx = 0.0;
    for (int j = 0; j < d; ++j) {
      const double b = f.basis(i, j);
      const double a1 = ranges[j].first * b, a2 = ranges[j].second * b;
      mn += std::min(a1, a2);
      mx += std::max(a1, a2);
    }
    lo[i] = static_cast<std::int64_t>(std::floor(mn)) - 1;
    hi[i] = static_cast<std::int64_t>(std::ceil(mx)) + 1;
  }
  return {lo, hi};
}

}  // namespace

AnchorLattice::AnchorLattice(DirectionFrame frame, double spacing_l, double spacing_t)
    : frame_(std::move(frame)), spacing_l_(spacing_l), spacing_t_(spacing_t) {
  if (!(spacing_l_ > 0)) throw std::invalid_argument("AnchorLattice: spacing_l must be positive");
  if (frame_.d > 1 && !(spacing_t_ > 0)) {
    throw std::invalid_argument("AnchorLattice: spacing_t must be positive");
  }
}

Site AnchorLattice::point(const Site& index) const {
  const int d = frame_.d;
  Vec p = static_cast<double>(index[0]) * spacing_l_ * frame_.basis.col(0);
  for (int j = 1; j < d; ++j) {
    p += static_cast<double>(index[j]) * spacing_t_ * frame_.basis.col(j);
  }
  Site out(d);
  for (int i = 0; i < d; ++i) out[i] = static_cast<std::int64_t>(std::floor(p[i]));
  return out;
}

std::vector<AnchorLattice::Anchor> AnchorLattice::anchors_in_window(const LatticeWindow& window,
                                                                    std::uint64_t cap) const {
  const int d = frame_.d;
  const double slack = floor_slack(d);

  // Frame-coordinate ranges attained over the window corners.
  double c_lo = 0, c_hi = 0;
  std::vector<double> t_lo(d, 0.0), t_hi(d, 0.0);
  bool first = true;
  Site corner(d);
  const std::uint64_t corners = 1ull << d;
  for (std::uint64_t mask = 0; mask < corners; ++mask) {
    for (int i = 0; i < d; ++i) corner[i] = (mask >> i) & 1 ? window.hi[i] : window.lo[i];
    const Vec v = to_vec(corner);
    const double c = frame_.coord(0, v);
    if (first || c < c_lo) c_lo = c;
    if (first || c > c_hi) c_hi = c;
    for (int j = 1; j < d; ++j) {
      const double t = frame_.coord(j, v);
      if (first || t < t_lo[j]) t_lo[j] = t;
      if (first || t > t_hi[j]) t_hi[j] = t;
    }
    first = false;
  }

  Site m_lo(d), m_hi(d);
  m_lo[0] = floor_div(c_lo - slack, spacing_l_);
  m_hi[0] = ceil_div(c_hi + slack, spacing_l_);
  for (int j = 1; j < d; ++j) {
    m_lo[j] = floor_div(t_lo[j] - slack, spacing_t_);
    m_hi[j] = ceil_div(t_hi[j] + slack, spacing_t_);
  }

  LatticeWindow index_window{m_lo, m_hi};
  if (index_window.size() > cap) {
    throw std::invalid_argument("AnchorLattice::anchors_in_window: index scan exceeds cap");
  }
  std::vector<Anchor> out;
  index_window.for_each([&](const Site& m) {
    Site p = point(m);
    if (window.contains(p)) out.push_back({m, p});
  });
  return out;
}

bool boxes_intersect(const Box& a, const Box& b, std::uint64_t scan_cap) {
  const DirectionFrame& f = a.frame();
  const int d = f.d;
  const Vec pa = to_vec(a.anchor());
  const Vec pb = to_vec(b.anchor());

  // Continuous separation in any frame coordinate proves lattice emptiness.
  std::vector<std::pair<double, double>> ranges(d);
  {
    const double lo = std::max(f.coord(0, pa) - a.nk() / 2.0, f.coord(0, pb) - b.nk() / 2.0);
    const double hi = std::min(f.coord(0, pa) + a.nk(), f.coord(0, pb) + b.nk());
    if (!(lo < hi)) return false;
    ranges[0] = {lo, hi};
  }
  for (int j = 1; j < d; ++j) {
    const double lo = std::max(f.coord(j, pa) - a.width(), f.coord(j, pb) - b.width());
    const double hi = std::min(f.coord(j, pa) + a.width(), f.coord(j, pb) + b.width());
    if (!(lo < hi)) return false;
    ranges[j] = {lo, hi};
  }

  // Scan the candidate window of the continuous overlap for a lattice point.
  LatticeWindow w = window_from_frame_ranges(f, ranges);
  if (w.size() > scan_cap) return true;  // conservative beyond the scan budget
  bool found = false;
  w.for_each([&](const Site& y) {
    if (!found && a.contains(y) && b.contains(y)) found = true;
  });
  return found;
}

BoxFamily::BoxFamily(DirectionFrame frame, ScaleSchedule schedule, int level,
                     BoxOverrides overrides, AnchorLattice lattice)
    : frame_(std::move(frame)),
      schedule_(schedule),
      level_(level),
      overrides_(overrides),
      lattice_(std::move(lattice)) {
  nk_ = schedule_.scale_d(level_);
  nkm1_ = schedule_.scale_d(level_ - 1);
  frontal_width_ = overrides_.frontal_width.value_or(nk_ * nk_ * nk_);
}

BoxFamily::BoxFamily(DirectionFrame frame, ScaleSchedule schedule, int level,
                     BoxOverrides overrides)
    : BoxFamily(frame, schedule, level, overrides, [&] {
        if (!schedule.multiple_of_six()) {
          throw std::invalid_argument("BoxFamily: N0 must be a multiple of 6");
        }
        const double nkm1 = schedule.scale_d(level - 1);
        const double fw = overrides.frontal_width.value_or(
            schedule.scale_d(level) * schedule.scale_d(level) * schedule.scale_d(level));
        return AnchorLattice(frame, nkm1 - 2.0, 2.0 * fw - 2.0);
      }()) {}

BoxFamily BoxFamily::with_lattice(DirectionFrame frame, ScaleSchedule schedule, int level,
                                  BoxOverrides overrides, AnchorLattice lattice) {
  return BoxFamily(std::move(frame), schedule, level, overrides, std::move(lattice));
}

Box BoxFamily::box_at(const Site& anchor) const {
  return Box(anchor, level_, frame_, schedule_, overrides_);
}

std::vector<Site> BoxFamily::covering_anchors(const Site& x) const {
  const int d = frame_.d;
  const double slack = floor_slack(d);
  const Vec xv = to_vec(x);
  const double c = frame_.coord(0, xv);

  // x in Btilde(y) forces y . l in (c - N_k, c - N_k + N_{k-1}].
  Site m_lo(d), m_hi(d);
  m_lo[0] = floor_div(c - nk_ - slack, lattice_.spacing_l());
  m_hi[0] = ceil_div(c - nk_ + nkm1_ + slack, lattice_.spacing_l());
  for (int j = 1; j < d; ++j) {
    const double t = frame_.coord(j, xv);
    m_lo[j] = floor_div(t - frontal_width_ - slack, lattice_.spacing_t());
    m_hi[j] = ceil_div(t + frontal_width_ + slack, lattice_.spacing_t());
  }

  std::vector<Site> out;
  LatticeWindow index_window{m_lo, m_hi};
  index_window.for_each([&](const Site& m) {
    Site anchor = lattice_.point(m);
    if (box_at(anchor).in_middle_frontal(x)) out.push_back(anchor);
  });
  std::sort(out.begin(), out.end(), SiteLess{});
  out.erase(std::unique(out.begin(), out.end(), SiteEq{}), out.end());
  return out;
}

Site BoxFamily::assign(const Site& x) const {
  std::vector<Site> anchors = covering_anchors(x);
  if (anchors.empty()) {
    throw std::runtime_error("BoxFamily::assign: no covering anchor (geometry misconfiguration)");
  }
  return anchors.front();
}

std::vector<Site> BoxFamily::anchors_intersecting(const Box& target, std::uint64_t cap) const {
  const int d = frame_.d;
  const double slack = floor_slack(d);
  const Vec tv = to_vec(target.anchor());
  const double tc = frame_.coord(0, tv);

  // Necessary interval overlap: y.l in (target_lo - N_k, target_hi + N_k/2).
  Site m_lo(d), m_hi(d);
  m_lo[0] = floor_div(tc - target.nk() / 2.0 - nk_ - slack, lattice_.spacing_l());
  m_hi[0] = ceil_div(tc + target.nk() + nk_ / 2.0 + slack, lattice_.spacing_l());
  const double w = overrides_.width.value_or(25.0 * nk_ * nk_ * nk_);
  for (int j = 1; j < d; ++j) {
    const double t = frame_.coord(j, tv);
    m_lo[j] = floor_div(t - target.width() - w - slack, lattice_.spacing_t());
    m_hi[j] = ceil_div(t + target.width() + w + slack, lattice_.spacing_t());
  }
  LatticeWindow index_window{m_lo, m_hi};
  if (index_window.size() > cap) {
    throw std::invalid_argument("BoxFamily::anchors_intersecting: candidate scan exceeds cap");
  }
  std::vector<Site> out;
  index_window.for_each([&](const Site& m) {
    Site anchor = lattice_.point(m);
    if (boxes_intersect(box_at(anchor), target)) out.push_back(anchor);
  });
  std::sort(out.begin(), out.end(), SiteLess{});
  out.erase(std::unique(out.begin(), out.end(), SiteEq{}), out.end());
  return out;
}

CoverReport cover_check(const BoxFamily& family, const LatticeWindow& window,
                        std::size_t witness_cap) {
  CoverReport report;
  window.for_each([&](const Site& x) {
    ++report.checked;
    if (family.covering_anchors(x).empty()) {
      report.covered = false;
      if (report.witnesses.size() < witness_cap) report.witnesses.push_back(x);
    }
  });
  return report;
}

AnchorLattice parallelogram_lattice(std::int64_t n, const DirectionFrame& frame) {
  if (n < 3) throw std::invalid_argument("parallelogram_lattice: n must be >= 3");
  const double nd = static_cast<double>(n);
  const double wt = nd * nd * nd * std::log(std::log(nd)) / std::log(nd);
  return AnchorLattice(frame, nd, wt);
}

namespace {

// Exact pairwise-disjointness check for two parallelograms of the same scale.
bool parallelograms_disjoint(const Parallelogram& a, const Parallelogram& b,
                             std::uint64_t scan_cap = 1u << 21) {
  const DirectionFrame& f = a.frame();
  const int d = f.d;
  const Vec da = to_vec(a.anchor());
  const Vec db = to_vec(b.anchor());
  const double nd = static_cast<double>(a.n());

  std::vector<std::pair<double, double>> ranges(d);
  {
    const double lo = std::max(f.coord(0, da), f.coord(0, db)) - 2.0 * nd;
    const double hi = std::min(f.coord(0, da), f.coord(0, db)) + 2.0 * nd;
    if (!(lo < hi)) return true;
    ranges[0] = {lo, hi};
  }
  for (int j = 1; j < d; ++j) {
    const double wt2 = 2.0 * a.transverse_scale();
    const double lo = std::max(f.coord(j, da), f.coord(j, db)) - wt2;
    const double hi = std::min(f.coord(j, da), f.coord(j, db)) + wt2;
    if (!(lo < hi)) return true;
    ranges[j] = {lo, hi};
  }

  // Continuous overlap in all axes: scan for a shared lattice point.
  LatticeWindow w = window_from_frame_ranges(f, ranges);
  if (w.size() > scan_cap) return false;  // cannot certify; report as violation
  bool shared = false;
  w.for_each([&](const Site& y) {
    if (!shared && a.contains(y) && b.contains(y)) shared = true;
  });
  return !shared;
}

}  // namespace

ColoringPartition color_classes(std::int64_t n, const DirectionFrame& frame,
                                const LatticeWindow& window) {
  const int d = frame.d;
  std::uint64_t num_classes = 1;
  for (int i = 0; i < d; ++i) num_classes *= 5;

  AnchorLattice lattice = parallelogram_lattice(n, frame);
  std::vector<AnchorLattice::Anchor> anchors = lattice.anchors_in_window(window);

  ColoringPartition part;
  part.n = n;
  part.d = d;
  part.classes.resize(num_classes);
  part.class_indices.resize(num_classes);
  part.anchors_total = anchors.size();

  for (const auto& a : anchors) {
    std::uint64_t id = 0, base = 1;
    for (int i = 0; i < d; ++i) {
      const std::int64_t r = ((a.index[i] % 5) + 5) % 5;
      id += static_cast<std::uint64_t>(r) * base;
      base *= 5;
    }
    part.classes[id].push_back(a.point);
    part.class_indices[id].push_back(a.index);
  }

  for (std::uint64_t c = 0; c < num_classes; ++c) {
    const auto& cls = part.classes[c];
    for (std::size_t i = 0; i < cls.size(); ++i) {
      Parallelogram pi(cls[i], n, frame);
      for (std::size_t j = i + 1; j < cls.size(); ++j) {
        Parallelogram pj(cls[j], n, frame);
        if (!parallelograms_disjoint(pi, pj)) {
          throw std::runtime_error(
              "color_classes: residue construction yields intersecting parallelograms at this n");
        }
      }
    }
  }
  part.verified = true;
  return part;
}

}  // namespace rwre::geom
