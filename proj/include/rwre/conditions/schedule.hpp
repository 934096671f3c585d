#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <vector>

namespace rwre::cond {

/// The scalar machinery attached to a scale L (all functions of L, d, kappa):
///   gamma_L    = ln 2 / lnln L            effective stretched exponent
///   epsilon_L  = 1 / (lnln L)^2
///   beta_1     = gamma_L / 2,   alpha = gamma_L / 3,   a = L^{-alpha}
///   n_L        = ceil(4 (1 - gamma_L/2) / gamma_L) + 1
///   beta_j     = beta_1 + (j-1) gamma_L / 4           (beta_{n_L} > 1)
///   c_1        = -2 d ln kappa                        (must exceed 1)
///   par_scale  = floor(L^{epsilon_L})
struct ParameterSchedule {
  double L = 0;
  int d = 0;
  double kappa = 0;

  double gamma_L = 0;
  double epsilon_L = 0;
  double beta1 = 0;
  double alpha = 0;
  double a = 0;
  double c1 = 0;
  int n_L = 0;
  std::vector<double> betas;  // betas[j-1] = beta_j for j = 1..n_L
  std::int64_t par_scale_n = 0;

  double beta(int j) const { return betas.at(static_cast<std::size_t>(j - 1)); }

  /// ln of the bin threshold (1/2) exp{-c1 L^{beta_j}}; kept in log space
  /// because the linear value underflows already at moderate L.
  double bin_threshold_log(int j) const;

  nlohmann::json to_json() const;
};

/// Preconditions: L > e^e and kappa in (0, e^{-1/(2d)}). A kappa at or above
/// e^{-1/(2d)} makes c_1 <= 1 and is reported as an error rather than
/// silently proceeding.
ParameterSchedule parameter_schedule(double L, int d, double kappa);

}  // namespace rwre::cond
