#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace rwre::geom {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// The recursive scale sequence N_{k+1} = 3 (N_0 + k)^2 N_k with the
/// convention N_{-1} = 2 N_0 / 3. Values are exact integers (they overflow
/// 64 bits around k = 3-4 already), so everything is kept in arbitrary
/// precision and converted to double only at the geometry layer.
class ScaleSchedule {
 public:
  /// N0 must be an even integer >= 2. Box families additionally require
  /// N0 in 6Z so that N_{-1} and the lattice spacings are integers.
  explicit ScaleSchedule(std::int64_t n0);

  std::int64_t n0() const { return n0_; }
  bool multiple_of_six() const { return n0_ % 6 == 0; }

  /// Exact value for k >= -1 (k = -1 requires 3 | N0).
  BigInt scale(int k) const;

  /// Exact rational value for k >= -1 (handles N_{-1} = 2N0/3 for any even N0).
  BigRat scale_q(int k) const;

  /// Double view of scale(k); exact while below 2^53.
  double scale_d(int k) const;

  std::string scale_str(int k) const;

 private:
  std::int64_t n0_;
};

}  // namespace rwre::geom
