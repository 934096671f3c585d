#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <vector>

namespace rwre::cond {

/// Numerical audit of the constant recursions behind the good-box probability
/// bound. The headline quantity is how large N0 must be before the direct
/// series requirement
///   (12d + 2/3) ln N0 - sum_{j>=1} ln((90 (j+N0))^{12d}) / 2^j >= 1
/// holds; the audit evaluates the sequence, its infimum, whether the
/// closed-form sufficiency chain ((1/6) ln N0 > 1 route) applies, and the
/// minimal ln N0 solving the direct requirement.
struct ConstantAudit {
  int d = 0;
  std::int64_t N0 = 0;
  double kappa = 0;  // used only by the c'' sequence

  std::vector<double> cprime;    // c'_k, k = 0..series_terms
  std::vector<double> cdprime;   // c''_k, k = 0..series_terms
  double cprime_inf = 0;
  double cdprime_inf = 0;
  bool chain_sufficient = false;  // the log-series sufficiency chain closes and (1/6) ln N0 > 1
  double minimal_lnN0 = 0;        // direct-series requirement solved in log space

  nlohmann::json to_json() const;
};

/// Preconditions: N0 in 6Z with N0 >= 6; series_terms >= 32. `kappa` feeds
/// c_1 inside the c'' recursion only.
ConstantAudit constants_audit(int d, std::int64_t N0, int series_terms, double kappa = 0.1);

/// Minimal ln N0 with (2/3) ln N0 - 12d ln 90 - 12d sum_j ln(1 + j e^{-ln N0})/2^j >= 1,
/// solved by bisection in log space.
double minimal_lnN0(int d, int series_terms = 64);

}  // namespace rwre::cond
