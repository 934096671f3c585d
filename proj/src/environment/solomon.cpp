#include <rwre/environment/solomon.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace rwre::env {

const char* to_string(Transience t) {
  switch (t) {
    case Transience::Right: return "right";
    case Transience::Oscillating: return "oscillating";
    case Transience::Left: return "left";
  }
  return "?";
}

const char* to_string(SpeedRegime r) {
  switch (r) {
    case SpeedRegime::BallisticRight: return "ballistic_right";
    case SpeedRegime::ZeroSpeed: return "zero_speed";
    case SpeedRegime::BallisticLeft: return "ballistic_left";
  }
  return "?";
}

nlohmann::json SolomonReport::to_json() const {
  nlohmann::json j;
  j["E_ln_rho"] = moments.e_ln_rho;
  j["E_rho"] = moments.e_rho;
  j["E_rho_inv"] = moments.e_rho_inv;
  j["transience"] = to_string(transience);
  j["regime"] = to_string(regime);
  j["velocity"] = velocity;
  return j;
}

SolomonReport solomon_classify(const EnvironmentLaw& law) {
  if (law.d() != 1) throw std::invalid_argument("solomon_classify: requires a 1-dimensional law");
  const auto moments = law.rho_moments();
  if (!moments) {
    throw std::invalid_argument("solomon_classify: law carries no closed-form rho moments");
  }

  SolomonReport report;
  report.moments = *moments;

  constexpr double kZeroTol = 1e-12;
  if (moments->e_ln_rho > kZeroTol) {
    report.transience = Transience::Right;
  } else if (moments->e_ln_rho < -kZeroTol) {
    report.transience = Transience::Left;
  } else {
    report.transience = Transience::Oscillating;
  }

  if (moments->e_rho_inv < 1.0) {
    report.regime = SpeedRegime::BallisticRight;
    report.velocity = (1.0 - moments->e_rho_inv) / (1.0 + moments->e_rho_inv);
  } else if (moments->e_rho < 1.0) {
    report.regime = SpeedRegime::BallisticLeft;
    report.velocity = -(1.0 - moments->e_rho) / (1.0 + moments->e_rho);
  } else {
    report.regime = SpeedRegime::ZeroSpeed;
    report.velocity = 0.0;
  }
  return report;
}

}  // namespace rwre::env
