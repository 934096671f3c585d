#include <rwre/geometry/scales.hpp>

#include <stdexcept>

namespace rwre::geom {

ScaleSchedule::ScaleSchedule(std::int64_t n0) : n0_(n0) {
  if (n0 < 2 || n0 % 2 != 0) {
    throw std::invalid_argument("ScaleSchedule: N0 must be an even integer >= 2");
  }
}

BigInt ScaleSchedule::scale(int k) const {
  if (k < -1) throw std::invalid_argument("ScaleSchedule::scale: k must be >= -1");
  if (k == -1) {
    if (n0_ % 3 != 0) throw std::invalid_argument("ScaleSchedule::scale: N_{-1} = 2N0/3 is not an integer");
    return BigInt(2 * n0_) / 3;
  }
  BigInt n = n0_;
  for (int j = 0; j < k; ++j) {
    const BigInt f = BigInt(n0_) + j;
    n *= 3 * f * f;
  }
  return n;
}

BigRat ScaleSchedule::scale_q(int k) const {
  if (k == -1) return BigRat(BigInt(2 * n0_), BigInt(3));
  return BigRat(scale(k));
}

double ScaleSchedule::scale_d(int k) const {
  if (k == -1) return 2.0 * static_cast<double>(n0_) / 3.0;
  return scale(k).convert_to<double>();
}

std::string ScaleSchedule::scale_str(int k) const { return scale_q(k).str(); }

}  // namespace rwre::geom
