#include <rwre/conditions/audit.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rwre::cond {

nlohmann::json ConstantAudit::to_json() const {
  nlohmann::json j;
  j["d"] = d;
  j["N0"] = N0;
  j["kappa"] = kappa;
  j["cprime_inf"] = cprime_inf;
  j["cdprime_inf"] = cdprime_inf;
  j["chain_sufficient"] = chain_sufficient;
  j["minimal_lnN0"] = minimal_lnN0;
  j["cprime"] = cprime;
  j["cdprime"] = cdprime;
  return j;
}

namespace {

double direct_requirement_gap(int d, double ln_n0, int terms) {
  // (2/3) ln N0 - 12d ln 90 - 12d sum_j ln(1 + j e^{-ln N0}) / 2^j - 1
  double s = 0.0;
  for (int j = 1; j <= terms; ++j) {
    s += std::log1p(static_cast<double>(j) * std::exp(-ln_n0)) * std::pow(0.5, j);
  }
  return (2.0 / 3.0) * ln_n0 - 12.0 * d * std::log(90.0) - 12.0 * d * s - 1.0;
}

}  // namespace

double minimal_lnN0(int d, int series_terms) {
  double lo = 1.0, hi = 1000.0;
  if (direct_requirement_gap(d, hi, series_terms) < 0.0) {
    throw std::logic_error("minimal_lnN0: bracket too small");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (direct_requirement_gap(d, mid, series_terms) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ConstantAudit constants_audit(int d, std::int64_t N0, int series_terms, double kappa) {
  if (d < 1) throw std::invalid_argument("constants_audit: d must be >= 1");
  if (N0 < 6 || N0 % 6 != 0) throw std::invalid_argument("constants_audit: N0 must be in 6Z, >= 6");
  if (series_terms < 32) throw std::invalid_argument("constants_audit: series_terms must be >= 32");
  if (!(kappa > 0.0 && kappa < 1.0)) throw std::invalid_argument("constants_audit: kappa in (0,1)");

  ConstantAudit audit;
  audit.d = d;
  audit.N0 = N0;
  audit.kappa = kappa;

  const double n0 = static_cast<double>(N0);
  const double ln_n0 = std::log(n0);

  // c'_k = c'_{k-1} - ln((90 (k + N0))^{12d}) / 2^k, c'_0 = (12d + 2/3) ln N0.
  audit.cprime.resize(static_cast<std::size_t>(series_terms) + 1);
  audit.cprime[0] = (12.0 * d + 2.0 / 3.0) * ln_n0;
  for (int k = 1; k <= series_terms; ++k) {
    const double dec = 12.0 * d * std::log(90.0 * (static_cast<double>(k) + n0)) * std::pow(0.5, k);
    audit.cprime[static_cast<std::size_t>(k)] = audit.cprime[static_cast<std::size_t>(k - 1)] - dec;
  }
  audit.cprime_inf = *std::min_element(audit.cprime.begin(), audit.cprime.end());

  // c''_k = 5 ln N0 / N0
  //         - sum_{j<=k} [ 4 ln 3 / N_{j-1}
  //                        + (2 + 3 ln 3 + 6 d (ln kappa)^2) / (3 (N0+j-1)^2)
  //                        + 2 ln 6 / N_j ]
  // evaluated with N_j in double (the 1/N_j tail vanishes once N_j saturates).
  const double lk = std::log(kappa);
  const double band_num = 2.0 + 3.0 * std::log(3.0) + 6.0 * d * lk * lk;
  audit.cdprime.resize(static_cast<std::size_t>(series_terms) + 1);
  audit.cdprime[0] = 5.0 * ln_n0 / n0;
  double n_prev = n0;
  for (int j = 1; j <= series_terms; ++j) {
    const double f = n0 + static_cast<double>(j - 1);
    const double n_cur = std::isinf(n_prev) ? n_prev : 3.0 * f * f * n_prev;
    double term = 4.0 * std::log(3.0) / n_prev + band_num / (3.0 * f * f);
    if (!std::isinf(n_cur)) term += 2.0 * std::log(6.0) / n_cur;
    audit.cdprime[static_cast<std::size_t>(j)] = audit.cdprime[static_cast<std::size_t>(j - 1)] - term;
    n_prev = n_cur;
  }
  audit.cdprime_inf = *std::min_element(audit.cdprime.begin(), audit.cdprime.end());

  // Sufficiency chain: 12d (ln 90 + sum_j ln(j + N0)/2^j) bounded by
  // (12d + 1/2) ln N0, and the conclusion (1/6) ln N0 > 1.
  double s1 = 0.0;
  for (int j = 1; j <= series_terms; ++j) {
    s1 += std::log(static_cast<double>(j) + n0) * std::pow(0.5, j);
  }
  const bool chain = 12.0 * d * (std::log(90.0) + s1) <= (12.0 * d + 0.5) * ln_n0;
  audit.chain_sufficient = chain && ((1.0 / 6.0) * ln_n0 > 1.0);

  audit.minimal_lnN0 = minimal_lnN0(d, std::max(series_terms, 64));
  return audit;
}

}  // namespace rwre::cond
