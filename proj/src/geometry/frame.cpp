#include <rwre/geometry/frame.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace rwre::geom {

bool DirectionFrame::axis_aligned() const {
  for (int j = 0; j < d; ++j) {
    int nonzero = 0;
    for (int i = 0; i < d; ++i) {
      double v = std::abs(basis(i, j));
      if (v > 1e-15) {
        ++nonzero;
        if (std::abs(v - 1.0) > 1e-15) return false;
      }
    }
    if (nonzero != 1) return false;
  }
  return true;
}

nlohmann::json DirectionFrame::to_json() const {
  nlohmann::json j;
  j["d"] = d;
  nlohmann::json cols = nlohmann::json::array();
  for (int c = 0; c < d; ++c) {
    nlohmann::json col = nlohmann::json::array();
    for (int r = 0; r < d; ++r) col.push_back(basis(r, c));
    cols.push_back(col);
  }
  j["basis"] = cols;
  return j;
}

DirectionFrame build_frame(const Vec& l) {
  const int d = static_cast<int>(l.size());
  if (d < 1) throw std::invalid_argument("build_frame: empty direction vector");
  if (d > kMaxDim) throw std::invalid_argument("build_frame: dimension exceeds kMaxDim");
  const double norm = l.norm();
  if (norm == 0.0) throw std::invalid_argument("build_frame: zero vector");
  if (std::abs(norm - 1.0) > 1e-9) throw std::invalid_argument("build_frame: direction is not a unit vector");

  DirectionFrame f;
  f.d = d;
  f.basis.resize(d, d);
  f.basis.col(0) = l / norm;

  int have = 1;
  for (int i = 0; i < d && have < d; ++i) {
    Vec v = Vec::Zero(d);
    v[i] = 1.0;
    for (int b = 0; b < have; ++b) v -= f.basis.col(b).dot(v) * f.basis.col(b);
    const double vn = v.norm();
    if (vn < 1e-8) continue;  // e_i nearly in the span already
    v /= vn;
    for (int r = 0; r < d; ++r) {
      if (std::abs(v[r]) > 1e-12) {
        if (v[r] < 0.0) v = -v;
        break;
      }
    }
    f.basis.col(have++) = v;
  }
  if (have != d) throw std::invalid_argument("build_frame: failed to complete the basis");
  return f;
}

DirectionFrame axis_frame(int d) {
  Vec l = Vec::Zero(d);
  l[0] = 1.0;
  return build_frame(l);
}

bool frame_valid(const DirectionFrame& f, double tol) {
  if (f.d < 1 || f.basis.rows() != f.d || f.basis.cols() != f.d) return false;
  for (int a = 0; a < f.d; ++a) {
    if (std::abs(f.basis.col(a).norm() - 1.0) > tol) return false;
    for (int b = a + 1; b < f.d; ++b) {
      if (std::abs(f.basis.col(a).dot(f.basis.col(b))) > tol) return false;
    }
  }
  return true;
}

}  // namespace rwre::geom
