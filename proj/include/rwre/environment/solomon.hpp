#pragma once

#include <rwre/environment/law.hpp>

#include <nlohmann/json_fwd.hpp>

namespace rwre::env {

enum class Transience { Right, Oscillating, Left };
enum class SpeedRegime { BallisticRight, ZeroSpeed, BallisticLeft };

struct SolomonReport {
  RhoMoments moments;
  Transience transience = Transience::Oscillating;
  SpeedRegime regime = SpeedRegime::ZeroSpeed;
  double velocity = 0.0;

  nlohmann::json to_json() const;
};

const char* to_string(Transience t);
const char* to_string(SpeedRegime r);

/// d = 1 transience/speed trichotomy from the closed-form moments of
/// rho = w(0,+1)/w(0,-1):
///   E ln rho > 0 / = 0 / < 0        -> right / oscillating / left
///   E rho^{-1} < 1                  -> v = (1 - E rho^{-1})/(1 + E rho^{-1})
///   E rho < 1                       -> v = -(1 - E rho)/(1 + E rho)
///   otherwise                       -> zero speed (transient but not ballistic)
/// Throws std::invalid_argument for non-1D laws or laws without closed-form
/// moments (Dirichlet refuses rather than integrating numerically).
SolomonReport solomon_classify(const EnvironmentLaw& law);

}  // namespace rwre::env
