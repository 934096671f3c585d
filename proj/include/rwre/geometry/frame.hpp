#pragma once

#include <rwre/types.hpp>

#include <nlohmann/json_fwd.hpp>

namespace rwre::geom {

/// Orthonormal frame (l_1 = l, l_2, ..., l_d). Column j of `basis` is l_{j+1}.
struct DirectionFrame {
  int d = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim> basis;

  Vec l() const { return basis.col(0); }
  Vec axis(int j) const { return basis.col(j); }  // j in [0, d)

  double coord(int j, const Site& x) const { return basis.col(j).dot(to_vec(x)); }
  double coord(int j, const Vec& x) const { return basis.col(j).dot(x); }
  double coord_l(const Site& x) const { return coord(0, x); }

  /// x restricted to the direction-l line, and its orthogonal complement.
  Vec project_l(const Vec& x) const { return (basis.col(0).dot(x)) * basis.col(0); }
  Vec project_perp(const Vec& x) const { return x - project_l(x); }

  /// True when every basis vector is a signed standard basis vector; enables
  /// exact integer reasoning in the membership predicates' callers.
  bool axis_aligned() const;

  nlohmann::json to_json() const;
};

/// Completes l into an orthonormal frame: orthogonalize the standard basis
/// vectors against the running basis in index order, skip near-parallel ones,
/// normalize, and flip signs so the first nonzero coordinate is positive.
///
/// Preconditions: |l| = 1 within 1e-9, l.size() >= 1. Throws
/// std::invalid_argument otherwise.
DirectionFrame build_frame(const Vec& l);

/// Convenience frame with l = e_1 in dimension d.
DirectionFrame axis_frame(int d);

/// Verifies pairwise orthogonality and unit norms within `tol`.
bool frame_valid(const DirectionFrame& f, double tol = 1e-12);

}  // namespace rwre::geom
