#include <rwre/geometry/regions.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace rwre::geom {

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::Interior: return "interior";
    case PointClass::MiddleFrontal: return "middle_frontal";
    case PointClass::FrontBoundary: return "front_boundary";
    case PointClass::BackBoundary: return "back_boundary";
    case PointClass::SideBoundary: return "side_boundary";
    case PointClass::BoundaryOther: return "boundary_other";
    case PointClass::Outside: return "outside";
  }
  return "?";
}

bool LatticeWindow::contains(const Site& y) const {
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (y[i] < lo[i] || y[i] > hi[i]) return false;
  }
  return true;
}

std::uint64_t LatticeWindow::size() const {
  std::uint64_t n = 1;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    n *= static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
  }
  return n;
}

void LatticeWindow::for_each(const std::function<void(const Site&)>& fn) const {
  Site cur = lo;
  const int dd = d();
  for (;;) {
    fn(cur);
    int i = dd - 1;
    for (; i >= 0; --i) {
      if (cur[i] < hi[i]) {
        ++cur[i];
        for (int j = i + 1; j < dd; ++j) cur[j] = lo[j];
        break;
      }
    }
    if (i < 0) break;
  }
}

LatticeWindow frame_bounding_window(const DirectionFrame& frame, const Site& anchor,
                                    double c_lo, double c_hi, double t_bound) {
  const int d = frame.d;
  Site lo(d), hi(d);
  const double cmax = std::max(std::abs(c_lo), std::abs(c_hi));
  for (int i = 0; i < d; ++i) {
    double b = cmax * std::abs(frame.basis(i, 0));
    for (int j = 1; j < d; ++j) b += t_bound * std::abs(frame.basis(i, j));
    lo[i] = anchor[i] + static_cast<std::int64_t>(std::floor(-b)) - 1;
    hi[i] = anchor[i] + static_cast<std::int64_t>(std::ceil(b)) + 1;
  }
  return {lo, hi};
}

namespace {

template <typename Region>
bool adjacent_to(const Region& r, const Site& y) {
  const int d = static_cast<int>(y.size());
  for (int k = 0; k < 2 * d; ++k) {
    if (r.contains(y + step_for_index(d, k))) return true;
  }
  return false;
}

}  // namespace

Box::Box(Site anchor, int level, DirectionFrame frame, ScaleSchedule schedule,
         BoxOverrides overrides)
    : anchor_(std::move(anchor)),
      level_(level),
      frame_(std::move(frame)),
      schedule_(schedule),
      overrides_(overrides) {
  if (level_ < 0) throw std::invalid_argument("Box: level must be >= 0");
  if (anchor_.size() != frame_.d) throw std::invalid_argument("Box: anchor/frame dimension mismatch");
  nk_ = schedule_.scale_d(level_);
  nkm1_ = schedule_.scale_d(level_ - 1);
  width_ = overrides_.width.value_or(25.0 * nk_ * nk_ * nk_);
  frontal_width_ = overrides_.frontal_width.value_or(nk_ * nk_ * nk_);
  if (width_ <= 0 || frontal_width_ <= 0) throw std::invalid_argument("Box: widths must be positive");
  if (frontal_width_ > width_) throw std::invalid_argument("Box: frontal width exceeds box width");
}

bool Box::contains(const Site& y) const {
  const Vec r = to_vec(y) - to_vec(anchor_);
  const double c = frame_.coord(0, r);
  if (!(-nk_ / 2.0 < c && c < nk_)) return false;
  for (int j = 1; j < frame_.d; ++j) {
    if (!(std::abs(frame_.coord(j, r)) < width_)) return false;
  }
  return true;
}

bool Box::in_middle_frontal(const Site& y) const {
  const Vec r = to_vec(y) - to_vec(anchor_);
  const double c = frame_.coord(0, r);
  if (!(nk_ - nkm1_ <= c && c < nk_)) return false;
  for (int j = 1; j < frame_.d; ++j) {
    if (!(std::abs(frame_.coord(j, r)) < frontal_width_)) return false;
  }
  return true;
}

bool Box::on_boundary(const Site& y) const { return !contains(y) && adjacent_to(*this, y); }

PointClass Box::classify(const Site& y) const {
  if (contains(y)) return in_middle_frontal(y) ? PointClass::MiddleFrontal : PointClass::Interior;
  if (!adjacent_to(*this, y)) return PointClass::Outside;
  const Vec r = to_vec(y) - to_vec(anchor_);
  const double c = frame_.coord(0, r);
  bool within_width = true;
  for (int j = 1; j < frame_.d; ++j) {
    if (!(std::abs(frame_.coord(j, r)) < width_)) {
      within_width = false;
      break;
    }
  }
  if (within_width && c >= nk_) return PointClass::FrontBoundary;
  if (within_width && c <= -nk_ / 2.0) return PointClass::BackBoundary;
  return PointClass::SideBoundary;  // the rest of the outer boundary
}

std::vector<Site> Box::middle_frontal_sites(std::uint64_t cap) const {
  LatticeWindow w =
      frame_bounding_window(frame_, anchor_, nk_ - nkm1_, nk_, frontal_width_);
  if (w.size() > cap) throw std::invalid_argument("Box::middle_frontal_sites: scan exceeds cap");
  std::vector<Site> out;
  w.for_each([&](const Site& y) {
    if (in_middle_frontal(y)) out.push_back(y);
  });
  return out;
}

nlohmann::json Box::to_json() const {
  nlohmann::json j;
  j["kind"] = "box";
  j["anchor"] = std::vector<std::int64_t>(anchor_.data(), anchor_.data() + anchor_.size());
  j["level"] = level_;
  j["N0"] = schedule_.n0();
  j["frame"] = frame_.to_json();
  j["width"] = width_;
  j["frontal_width"] = frontal_width_;
  j["nonconforming"] = nonconforming();
  return j;
}

double euler_ee() { return std::exp(std::exp(1.0)); }

int k_index_for(const ScaleSchedule& schedule, double L) {
  if (!(L > schedule.scale_d(0) + 1)) {
    throw std::invalid_argument("k_index_for: L must exceed N_0 + 1");
  }
  int k = 0;
  while (!(schedule.scale_d(k + 1) + 1 >= L)) ++k;
  return k;
}

Slab Slab::make_d(DirectionFrame frame, double L, std::optional<double> transverse_override) {
  // The lnln in the transverse bound demands L > e^e; with no transverse
  // coordinates (d = 1) any L > 1 is fine.
  if (frame.d >= 2 && !(L > euler_ee())) {
    throw std::invalid_argument("Slab::make_d: L must exceed e^e");
  }
  if (!(L > 1.0)) throw std::invalid_argument("Slab::make_d: L must exceed 1");
  const int d = frame.d;
  Slab s;
  s.kind_ = Kind::D;
  s.frame_ = std::move(frame);
  s.L_ = L;
  s.lo_l_ = -L;
  s.hi_l_ = 10.0 * L;
  s.half_t_ = d >= 2 ? L * L * L * std::log(std::log(L)) / std::log(L) : 0.0;
  if (transverse_override) {
    s.half_t_ = *transverse_override;
    s.nonconforming_ = true;
  }
  return s;
}

Slab Slab::make_s(DirectionFrame frame, ScaleSchedule schedule, int k_index,
                  std::optional<double> transverse_override) {
  if (k_index < 0) throw std::invalid_argument("Slab::make_s: k index must be >= 0");
  Slab s;
  s.kind_ = Kind::S;
  s.frame_ = std::move(frame);
  s.k_index_ = k_index;
  s.n0_ = schedule.n0();
  const double nk = schedule.scale_d(k_index);
  const double nk1 = schedule.scale_d(k_index + 1);
  const double m0 = static_cast<double>(schedule.n0());
  s.lo_l_ = -nk;
  s.hi_l_ = 11.0 * nk1;
  s.half_t_ = 3000.0 * nk * nk * nk * (m0 + k_index - 1) * (m0 + k_index - 1) *
              (m0 + k_index) * (m0 + k_index);
  if (transverse_override) {
    s.half_t_ = *transverse_override;
    s.nonconforming_ = true;
  }
  return s;
}

bool Slab::contains(const Site& y) const {
  const double c = frame_.coord(0, y);
  if (!(lo_l_ <= c && c <= hi_l_)) return false;
  for (int j = 1; j < frame_.d; ++j) {
    if (!(std::abs(frame_.coord(j, y)) <= half_t_)) return false;
  }
  return true;
}

bool Slab::on_boundary(const Site& y) const { return !contains(y) && adjacent_to(*this, y); }

PointClass Slab::classify(const Site& y) const {
  if (contains(y)) return PointClass::Interior;
  if (!adjacent_to(*this, y)) return PointClass::Outside;
  const double c = frame_.coord(0, y);
  bool within = true;
  for (int j = 1; j < frame_.d; ++j) {
    if (!(std::abs(frame_.coord(j, y)) <= half_t_)) {
      within = false;
      break;
    }
  }
  if (within && c > hi_l_) return PointClass::FrontBoundary;
  return PointClass::BoundaryOther;
}

nlohmann::json Slab::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_ == Kind::D ? "slab_d" : "slab_s";
  j["frame"] = frame_.to_json();
  j["l_range"] = {lo_l_, hi_l_};
  j["transverse_bound"] = half_t_;
  if (kind_ == Kind::D) j["L"] = L_;
  if (kind_ == Kind::S) {
    j["k_index"] = k_index_;
    j["N0"] = n0_;
  }
  j["nonconforming"] = nonconforming_;
  return j;
}

Parallelogram::Parallelogram(Site anchor, std::int64_t n, DirectionFrame frame,
                             std::optional<double> transverse_override)
    : anchor_(std::move(anchor)), n_(n), frame_(std::move(frame)) {
  if (n < 3) throw std::invalid_argument("Parallelogram: n must be >= 3 (lnln n must be positive)");
  const double nd = static_cast<double>(n);
  wt_ = nd * nd * nd * std::log(std::log(nd)) / std::log(nd);
  if (transverse_override) {
    wt_ = *transverse_override;
    nonconforming_ = true;
  }
}

bool Parallelogram::contains(const Site& y) const {
  const Vec r = to_vec(y) - to_vec(anchor_);
  const double c = frame_.coord(0, r);
  const double nd = static_cast<double>(n_);
  if (!(-2.0 * nd < c && c < 2.0 * nd)) return false;
  for (int j = 1; j < frame_.d; ++j) {
    if (!(std::abs(frame_.coord(j, r)) < 2.0 * wt_)) return false;
  }
  return true;
}

bool Parallelogram::in_central(const Site& y) const {
  const Vec r = to_vec(y) - to_vec(anchor_);
  const double c = frame_.coord(0, r);
  const double nd = static_cast<double>(n_);
  if (!(-nd - 1.0 < c && c < nd + 1.0)) return false;
  for (int j = 1; j < frame_.d; ++j) {
    if (!(std::abs(frame_.coord(j, r)) < wt_ + 1.0)) return false;
  }
  return true;
}

bool Parallelogram::on_boundary(const Site& y) const { return !contains(y) && adjacent_to(*this, y); }

PointClass Parallelogram::classify(const Site& y) const {
  if (contains(y)) return PointClass::Interior;
  if (!adjacent_to(*this, y)) return PointClass::Outside;
  const Vec r = to_vec(y) - to_vec(anchor_);
  const double c = frame_.coord(0, r);
  bool within = true;
  for (int j = 1; j < frame_.d; ++j) {
    if (!(std::abs(frame_.coord(j, r)) < wt_ + 1.0)) {
      within = false;
      break;
    }
  }
  if (within && c >= 2.0 * static_cast<double>(n_)) return PointClass::FrontBoundary;
  return PointClass::BoundaryOther;
}

nlohmann::json Parallelogram::to_json() const {
  nlohmann::json j;
  j["kind"] = "parallelogram";
  j["anchor"] = std::vector<std::int64_t>(anchor_.data(), anchor_.data() + anchor_.size());
  j["n"] = n_;
  j["frame"] = frame_.to_json();
  j["transverse_scale"] = wt_;
  j["nonconforming"] = nonconforming_;
  return j;
}

BoxSpecification::BoxSpecification(DirectionFrame frame, double l_minus, double l_plus,
                                   double half_t, bool nonconforming)
    : frame_(std::move(frame)),
      l_minus_(l_minus),
      l_plus_(l_plus),
      half_t_(half_t),
      nonconforming_(nonconforming) {
  if (!(l_minus_ > 0) || !(l_plus_ > 0)) {
    throw std::invalid_argument("BoxSpecification: extents must be positive");
  }
  if (frame_.d > 1 && !(half_t_ > 0)) {
    throw std::invalid_argument("BoxSpecification: transverse extent must be positive");
  }
}

BoxSpecification BoxSpecification::for_scale(DirectionFrame frame, double L, double l_tilde,
                                             bool nonconforming) {
  return BoxSpecification(std::move(frame), L - 2.0, L + 2.0, l_tilde, nonconforming);
}

bool BoxSpecification::contains(const Site& y) const {
  const double c = frame_.coord(0, y);
  if (!(-l_minus_ < c && c < l_plus_)) return false;
  for (int j = 1; j < frame_.d; ++j) {
    if (!(std::abs(frame_.coord(j, y)) < half_t_)) return false;
  }
  return true;
}

bool BoxSpecification::on_boundary(const Site& y) const {
  return !contains(y) && adjacent_to(*this, y);
}

PointClass BoxSpecification::classify(const Site& y) const {
  if (contains(y)) return PointClass::Interior;
  if (!adjacent_to(*this, y)) return PointClass::Outside;
  const double c = frame_.coord(0, y);
  bool within = true;
  for (int j = 1; j < frame_.d; ++j) {
    if (!(std::abs(frame_.coord(j, y)) < half_t_)) {
      within = false;
      break;
    }
  }
  if (within && c >= l_plus_) return PointClass::FrontBoundary;
  return PointClass::BoundaryOther;
}

nlohmann::json BoxSpecification::to_json() const {
  nlohmann::json j;
  j["kind"] = "box_specification";
  j["frame"] = frame_.to_json();
  j["l_minus"] = l_minus_;
  j["l_plus"] = l_plus_;
  j["l_tilde"] = half_t_;
  j["nonconforming"] = nonconforming_;
  return j;
}

}  // namespace rwre::geom
