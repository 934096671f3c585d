#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rwre {

/// Hard cap on the lattice dimension. Keeps the small coordinate vectors on
/// the stack (no heap traffic in the walk inner loop).
inline constexpr int kMaxDim = 8;

using Scalar = double;
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Site = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

inline Vec to_vec(const Site& s) { return s.cast<Scalar>(); }

inline Site zero_site(int d) { return Site::Zero(d); }

/// Unit lattice step along `axis` (0-based) with the given sign.
inline Site unit_step(int d, int axis, int sign) {
  Site e = Site::Zero(d);
  e[axis] = sign;
  return e;
}

/// Direction index convention used throughout: 2*axis is +e_{axis+1},
/// 2*axis+1 is -e_{axis+1}.
inline Site step_for_index(int d, int dir_index) {
  return unit_step(d, dir_index / 2, (dir_index % 2 == 0) ? +1 : -1);
}

inline bool site_equal(const Site& a, const Site& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

/// Lexicographic order on coordinates; the deterministic tie-break order.
inline bool site_less(const Site& a, const Site& b) {
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

struct SiteLess {
  bool operator()(const Site& a, const Site& b) const { return site_less(a, b); }
};

struct SiteEq {
  bool operator()(const Site& a, const Site& b) const { return site_equal(a, b); }
};

struct SiteHash {
  std::size_t operator()(const Site& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      std::uint64_t x = static_cast<std::uint64_t>(s[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      h ^= x ^ (x >> 31);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Thrown when a linear solve fails or a probability denominator degenerates.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown on malformed experiment configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rwre
