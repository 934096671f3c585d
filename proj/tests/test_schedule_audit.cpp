#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rwre/conditions/audit.hpp>
#include <rwre/conditions/schedule.hpp>

#include <cmath>

using namespace rwre;
using namespace rwre::cond;

TEST_CASE("schedule at L = e^{e^2} reproduces the closed-form values") {
  const double L = std::exp(std::exp(2.0));
  const ParameterSchedule s = parameter_schedule(L, 2, 0.1);
  CHECK(std::abs(s.gamma_L - 0.346574) < 1e-5);
  CHECK(std::abs(s.epsilon_L - 0.25) < 1e-5);
  CHECK(std::abs(s.beta1 - 0.173287) < 1e-5);
  CHECK(std::abs(s.alpha - 0.115525) < 1e-5);
  CHECK(std::abs(s.a - 0.42587) < 1e-5);
  CHECK(s.n_L == 11);
  CHECK(std::abs(s.betas.back() - 1.039721) < 1e-5);
  CHECK(std::abs(s.c1 - 9.21034) < 1e-5);
  // beta_j ladder with gap gamma/4.
  for (int j = 2; j <= s.n_L; ++j) {
    CHECK(s.beta(j) - s.beta(j - 1) == doctest::Approx(s.gamma_L / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("schedule at L = 1e6") {
  const ParameterSchedule s = parameter_schedule(1e6, 2, 0.1);
  const double lnln = std::log(std::log(1e6));
  CHECK(s.epsilon_L == doctest::Approx(1.0 / (lnln * lnln)).epsilon(1e-12));
  CHECK(s.par_scale_n == 7);  // floor(1e6^eps)
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(parameter_schedule(10.0, 2, 0.1), std::invalid_argument);  // L <= e^e
  // kappa >= e^{-1/(2d)} makes c1 <= 1.
  const double bad_kappa = std::exp(-1.0 / 4.0) + 0.01;
  CHECK_THROWS_AS(parameter_schedule(1e4, 2, bad_kappa), std::invalid_argument);
  CHECK_THROWS_AS(parameter_schedule(1e4, 2, 0.0), std::invalid_argument);
}

TEST_CASE("beta_n exceeds 1 on a log grid of L") {
  for (double e10 = 2.0; e10 <= 12.0; e10 += 0.25) {
    const ParameterSchedule s = parameter_schedule(std::pow(10.0, e10), 2, 0.1);
    CHECK(s.betas.back() > 1.0);
  }
}

TEST_CASE("bin thresholds in log space") {
  const double L = std::exp(std::exp(2.0));
  const ParameterSchedule s = parameter_schedule(L, 2, 0.1);
  for (int j = 1; j <= s.n_L; ++j) {
    const double expect = std::log(0.5) - s.c1 * std::pow(L, 0.173287 + (j - 1) * 0.0866434);
    CHECK(s.bin_threshold_log(j) == doctest::Approx(expect).epsilon(1e-4));
  }
  // Thresholds decrease with j.
  for (int j = 2; j <= s.n_L; ++j) CHECK(s.bin_threshold_log(j) < s.bin_threshold_log(j - 1));
}

TEST_CASE("audit at d=2, N0=600: the sufficiency chain fails") {
  const ConstantAudit a = constants_audit(2, 600, 64);
  CHECK(a.cprime[0] == doctest::Approx((24.0 + 2.0 / 3.0) * std::log(600.0)).epsilon(1e-12));
  CHECK(a.cprime[0] == doctest::Approx(157.79).epsilon(1e-3));
  CHECK(a.cprime_inf < 0.0);
  CHECK(!a.chain_sufficient);
  // Recursion spot check: c'_1 = c'_0 - ln((90 * 601)^{24}) / 2.
  const double dec = 24.0 * std::log(90.0 * 601.0) / 2.0;
  CHECK(a.cprime[1] == doctest::Approx(a.cprime[0] - dec).epsilon(1e-12));
}

TEST_CASE("minimal ln N0 for d = 2 is about 163.5") {
  const double x = minimal_lnN0(2);
  CHECK(std::abs(x - 163.5) < 0.5);
  // N0 ~ 1e71.
  CHECK(x / std::log(10.0) == doctest::Approx(71.0).epsilon(0.01));
}

TEST_CASE("audit infimum is monotone nondecreasing in N0") {
  double last = -1e300;
  for (std::int64_t n0 : {6, 12, 60, 600, 6000, 60000}) {
    const ConstantAudit a = constants_audit(2, n0, 64);
    CHECK(a.cprime_inf >= last);
    last = a.cprime_inf;
  }
}

TEST_CASE("audit c'' recursion spot check") {
  const ConstantAudit a = constants_audit(2, 12, 40, 0.2);
  const double n0 = 12.0, lk = std::log(0.2);
  CHECK(a.cdprime[0] == doctest::Approx(5.0 * std::log(n0) / n0).epsilon(1e-12));
  const double term1 = 4.0 * std::log(3.0) / n0 +
                       (2.0 + 3.0 * std::log(3.0) + 6.0 * 2.0 * lk * lk) / (3.0 * n0 * n0) +
                       2.0 * std::log(6.0) / (3.0 * n0 * n0 * n0);
  CHECK(a.cdprime[1] == doctest::Approx(a.cdprime[0] - term1).epsilon(1e-12));
}

TEST_CASE("audit validation") {
  CHECK_THROWS_AS(constants_audit(2, 7, 64), std::invalid_argument);   // not in 6Z
  CHECK_THROWS_AS(constants_audit(2, 12, 8), std::invalid_argument);   // too few terms
  CHECK_THROWS_AS(constants_audit(0, 12, 64), std::invalid_argument);
}
