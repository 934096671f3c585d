#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace rwre::solver {

/// Closed-form gambler's ruin: probability that a unit-step walk with right
/// probability p, started at 0, hits +b before -a. Evaluates
/// (1 - lam^a) / (1 - lam^{a+b}) with lam = (1-p)/p, and a/(a+b) at p = 1/2
/// by continuity.
inline double ruin_probability(double p, std::int64_t a, std::int64_t b) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("ruin_probability: p must be in (0,1)");
  if (a < 1 || b < 1) throw std::invalid_argument("ruin_probability: a and b must be >= 1");
  const double lam = (1.0 - p) / p;
  if (std::abs(lam - 1.0) < 1e-12) {
    return static_cast<double>(a) / static_cast<double>(a + b);
  }
  // expm1-based form stays accurate when lam^a is close to 1
  const double la = std::log(lam);
  return std::expm1(static_cast<double>(a) * la) / std::expm1(static_cast<double>(a + b) * la);
}

}  // namespace rwre::solver
