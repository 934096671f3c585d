#include <rwre/conditions/schedule.hpp>

#include <rwre/geometry/regions.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace rwre::cond {

double ParameterSchedule::bin_threshold_log(int j) const {
  return std::log(0.5) - c1 * std::pow(L, beta(j));
}

nlohmann::json ParameterSchedule::to_json() const {
  nlohmann::json j;
  j["L"] = L;
  j["d"] = d;
  j["kappa"] = kappa;
  j["gamma_L"] = gamma_L;
  j["epsilon_L"] = epsilon_L;
  j["beta1"] = beta1;
  j["alpha"] = alpha;
  j["a"] = a;
  j["c1"] = c1;
  j["n_L"] = n_L;
  j["betas"] = betas;
  j["par_scale_n"] = par_scale_n;
  return j;
}

ParameterSchedule parameter_schedule(double L, int d, double kappa) {
  if (!(L > geom::euler_ee())) {
    throw std::invalid_argument("parameter_schedule: L must exceed e^e");
  }
  if (d < 1) throw std::invalid_argument("parameter_schedule: d must be >= 1");
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("parameter_schedule: kappa must be in (0,1)");
  }

  ParameterSchedule s;
  s.L = L;
  s.d = d;
  s.kappa = kappa;

  const double lnln = std::log(std::log(L));
  s.gamma_L = std::log(2.0) / lnln;
  s.epsilon_L = 1.0 / (lnln * lnln);
  s.beta1 = s.gamma_L / 2.0;
  s.alpha = s.gamma_L / 3.0;
  s.a = std::pow(L, -s.alpha);
  s.c1 = -2.0 * static_cast<double>(d) * std::log(kappa);
  if (!(s.c1 > 1.0)) {
    throw std::invalid_argument(
        "parameter_schedule: c1 = -2d ln kappa <= 1 (kappa too large for this regime)");
  }
  s.n_L = static_cast<int>(std::ceil(4.0 * (1.0 - s.gamma_L / 2.0) / s.gamma_L)) + 1;
  s.betas.resize(static_cast<std::size_t>(s.n_L));
  for (int j = 1; j <= s.n_L; ++j) {
    s.betas[static_cast<std::size_t>(j - 1)] = s.beta1 + (j - 1) * s.gamma_L / 4.0;
  }
  if (!(s.betas.back() > 1.0)) {
    throw std::logic_error("parameter_schedule: beta_{n_L} <= 1 (schedule invariant violated)");
  }
  s.par_scale_n = static_cast<std::int64_t>(std::floor(std::pow(L, s.epsilon_L)));
  return s;
}

}  // namespace rwre::cond
