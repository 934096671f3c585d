#include <rwre/environment/law.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace rwre::env {

bool TransitionKernel::valid(double tol, std::optional<double> kappa) const {
  if (w.size() < 2 || w.size() % 2 != 0) return false;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0)) return false;
    if (kappa && !(w[i] >= *kappa - 1e-15)) return false;
    sum += w[i];
  }
  return std::abs(sum - 1.0) <= tol;
}

int TransitionKernel::sample(double u) const {
  double acc = 0.0;
  const int n = static_cast<int>(w.size());
  for (int i = 0; i < n - 1; ++i) {
    acc += w[i];
    if (u < acc) return i;
  }
  return n - 1;
}

TransitionKernel TransitionKernel::symmetric(int d) {
  TransitionKernel k;
  k.w.setConstant(2 * d, 1.0 / (2.0 * d));
  return k;
}

TransitionKernel TransitionKernel::one_d(double right) {
  TransitionKernel k;
  k.w.resize(2);
  k.w[0] = right;
  k.w[1] = 1.0 - right;
  return k;
}

namespace {

void require_kernel(const TransitionKernel& k, const char* what) {
  if (!k.valid(1e-12)) throw std::invalid_argument(std::string(what) + ": invalid kernel");
}

}  // namespace

EnvironmentLaw::EnvironmentLaw(ConstantLaw law, std::optional<double> kappa)
    : law_(std::move(law)), d_(std::get<ConstantLaw>(law_).kernel.dim()) {
  validate(kappa);
}

EnvironmentLaw::EnvironmentLaw(TwoPointLaw law, std::optional<double> kappa)
    : law_(std::move(law)), d_(std::get<TwoPointLaw>(law_).kernel_a.dim()) {
  validate(kappa);
}

EnvironmentLaw::EnvironmentLaw(DirichletLaw law, std::optional<double> kappa)
    : law_(std::move(law)), d_(static_cast<int>(std::get<DirichletLaw>(law_).concentration.size()) / 2) {
  validate(kappa);
}

EnvironmentLaw::EnvironmentLaw(PerturbedSRWLaw law, std::optional<double> kappa)
    : law_(std::move(law)), d_(static_cast<int>(std::get<PerturbedSRWLaw>(law_).drift.size())) {
  validate(kappa);
}

const char* EnvironmentLaw::kind() const {
  switch (law_.index()) {
    case 0: return "constant";
    case 1: return "two_point";
    case 2: return "dirichlet";
    case 3: return "perturbed_srw";
  }
  return "?";
}

// Validates the (IID)/(UE) contract analytically per kind: a declared kappa
// must be met by every realizable kernel, not just typical ones.
void EnvironmentLaw::validate(std::optional<double> declared_kappa) {
  if (d_ < 1 || d_ > kMaxDim) throw std::invalid_argument("EnvironmentLaw: bad dimension");
  if (declared_kappa && !(*declared_kappa > 0.0)) {
    throw std::invalid_argument("EnvironmentLaw: declared kappa must be positive");
  }

  if (const auto* c = std::get_if<ConstantLaw>(&law_)) {
    require_kernel(c->kernel, "ConstantLaw");
    const double floor = c->kernel.min_weight();
    if (declared_kappa && floor < *declared_kappa - 1e-15) {
      throw std::invalid_argument("ConstantLaw: kernel violates declared kappa");
    }
    kappa_ = declared_kappa ? declared_kappa
                            : (floor > 0.0 ? std::optional<double>(floor) : std::nullopt);
  } else if (const auto* t = std::get_if<TwoPointLaw>(&law_)) {
    require_kernel(t->kernel_a, "TwoPointLaw");
    require_kernel(t->kernel_b, "TwoPointLaw");
    if (t->kernel_a.dim() != t->kernel_b.dim()) {
      throw std::invalid_argument("TwoPointLaw: kernel dimension mismatch");
    }
    if (!(t->prob_a >= 0.0 && t->prob_a <= 1.0)) {
      throw std::invalid_argument("TwoPointLaw: prob_a outside [0,1]");
    }
    const double floor = std::min(t->kernel_a.min_weight(), t->kernel_b.min_weight());
    if (declared_kappa && floor < *declared_kappa - 1e-15) {
      throw std::invalid_argument("TwoPointLaw: kernels violate declared kappa");
    }
    kappa_ = declared_kappa ? declared_kappa
                            : (floor > 0.0 ? std::optional<double>(floor) : std::nullopt);
  } else if (const auto* dl = std::get_if<DirichletLaw>(&law_)) {
    if (dl->concentration.size() != 2 * d_ || dl->concentration.minCoeff() <= 0.0) {
      throw std::invalid_argument("DirichletLaw: concentration must be positive per direction");
    }
    // Dirichlet weights get arbitrarily close to 0: no declared kappa is
    // attainable, so a declared one is a construction-time error.
    if (declared_kappa) {
      throw std::invalid_argument("DirichletLaw: kernels can violate any declared kappa");
    }
    kappa_ = std::nullopt;
  } else if (const auto* p = std::get_if<PerturbedSRWLaw>(&law_)) {
    if (p->drift.size() != d_) throw std::invalid_argument("PerturbedSRWLaw: bad drift size");
    if (!(p->epsilon >= 0.0)) throw std::invalid_argument("PerturbedSRWLaw: epsilon must be >= 0");
    double worst = 1.0 / (2.0 * d_);
    for (int i = 0; i < d_; ++i) {
      worst = std::min(worst, 1.0 / (2.0 * d_) - (std::abs(p->drift[i]) + p->epsilon) / 2.0);
    }
    if (!(worst > 0.0)) {
      throw std::invalid_argument("PerturbedSRWLaw: drift/epsilon leave no elliptic floor");
    }
    if (declared_kappa && worst < *declared_kappa - 1e-15) {
      throw std::invalid_argument("PerturbedSRWLaw: parameters violate declared kappa");
    }
    kappa_ = declared_kappa ? *declared_kappa : worst;
  }
}

bool EnvironmentLaw::deterministic() const {
  if (std::holds_alternative<ConstantLaw>(law_)) return true;
  if (const auto* t = std::get_if<TwoPointLaw>(&law_)) {
    return t->prob_a == 0.0 || t->prob_a == 1.0;
  }
  if (const auto* p = std::get_if<PerturbedSRWLaw>(&law_)) return p->epsilon == 0.0;
  return false;
}

std::optional<RhoMoments> EnvironmentLaw::rho_moments() const {
  if (d_ != 1) return std::nullopt;
  auto point_rho = [](const TransitionKernel& k) {
    const double plus = k.w[0], minus = k.w[1];
    if (minus == 0.0) return std::numeric_limits<double>::infinity();
    return plus / minus;
  };
  auto from_mixture = [&](const std::vector<std::pair<double, double>>& rho_p) {
    RhoMoments m{0.0, 0.0, 0.0};
    for (const auto& [rho, p] : rho_p) {
      if (p == 0.0) continue;
      m.e_ln_rho += p * std::log(rho);
      m.e_rho += p * rho;
      m.e_rho_inv += p * (std::isinf(rho) ? 0.0 : (rho == 0.0 ? std::numeric_limits<double>::infinity()
                                                              : 1.0 / rho));
    }
    return m;
  };
  if (const auto* c = std::get_if<ConstantLaw>(&law_)) {
    return from_mixture({{point_rho(c->kernel), 1.0}});
  }
  if (const auto* t = std::get_if<TwoPointLaw>(&law_)) {
    return from_mixture({{point_rho(t->kernel_a), t->prob_a}, {point_rho(t->kernel_b), 1.0 - t->prob_a}});
  }
  if (const auto* p = std::get_if<PerturbedSRWLaw>(&law_)) {
    if (p->epsilon == 0.0) {
      const double right = 0.5 + p->drift[0] / 2.0;
      return from_mixture({{right / (1.0 - right), 1.0}});
    }
    return std::nullopt;  // continuous mixture: no closed form carried
  }
  return std::nullopt;  // Dirichlet: moments declared unavailable
}

TransitionKernel EnvironmentLaw::sample_kernel(rng::Stream& stream) const {
  if (const auto* c = std::get_if<ConstantLaw>(&law_)) return c->kernel;
  if (const auto* t = std::get_if<TwoPointLaw>(&law_)) {
    return stream.next_u01() < t->prob_a ? t->kernel_a : t->kernel_b;
  }
  if (const auto* dl = std::get_if<DirichletLaw>(&law_)) {
    TransitionKernel k;
    k.w.resize(2 * d_);
    double sum = 0.0;
    for (int i = 0; i < 2 * d_; ++i) {
      k.w[i] = stream.next_gamma(dl->concentration[i]);
      sum += k.w[i];
    }
    k.w /= sum;
    return k;
  }
  const auto& p = std::get<PerturbedSRWLaw>(law_);
  TransitionKernel k;
  k.w.resize(2 * d_);
  for (int i = 0; i < d_; ++i) {
    const double u = 2.0 * stream.next_u01() - 1.0;
    const double shift = (p.drift[i] + p.epsilon * u) / 2.0;
    k.w[2 * i] = 1.0 / (2.0 * d_) + shift;
    k.w[2 * i + 1] = 1.0 / (2.0 * d_) - shift;
  }
  return k;
}

nlohmann::json EnvironmentLaw::to_json() const {
  nlohmann::json j;
  j["kind"] = kind();
  j["d"] = d_;
  if (kappa_) j["kappa"] = *kappa_;
  if (const auto* c = std::get_if<ConstantLaw>(&law_)) {
    j["weights"] = std::vector<double>(c->kernel.w.data(), c->kernel.w.data() + c->kernel.w.size());
  } else if (const auto* t = std::get_if<TwoPointLaw>(&law_)) {
    j["weights_a"] =
        std::vector<double>(t->kernel_a.w.data(), t->kernel_a.w.data() + t->kernel_a.w.size());
    j["weights_b"] =
        std::vector<double>(t->kernel_b.w.data(), t->kernel_b.w.data() + t->kernel_b.w.size());
    j["prob_a"] = t->prob_a;
  } else if (const auto* dl = std::get_if<DirichletLaw>(&law_)) {
    j["concentration"] =
        std::vector<double>(dl->concentration.data(), dl->concentration.data() + dl->concentration.size());
  } else if (const auto* p = std::get_if<PerturbedSRWLaw>(&law_)) {
    j["drift"] = std::vector<double>(p->drift.data(), p->drift.data() + p->drift.size());
    j["epsilon"] = p->epsilon;
  }
  return j;
}

namespace {

TransitionKernel kernel_from_weights(const std::vector<double>& ws) {
  TransitionKernel k;
  k.w.resize(static_cast<Eigen::Index>(ws.size()));
  for (std::size_t i = 0; i < ws.size(); ++i) k.w[static_cast<Eigen::Index>(i)] = ws[i];
  return k;
}

}  // namespace

EnvironmentLaw EnvironmentLaw::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  std::optional<double> kappa;
  if (j.contains("kappa")) kappa = j["kappa"].get<double>();

  if (kind == "constant") {
    if (j.contains("right")) {
      return EnvironmentLaw(ConstantLaw{TransitionKernel::one_d(j["right"].get<double>())}, kappa);
    }
    return EnvironmentLaw(ConstantLaw{kernel_from_weights(j.at("weights").get<std::vector<double>>())},
                          kappa);
  }
  if (kind == "two_point") {
    TwoPointLaw t;
    if (j.contains("right_a")) {
      t.kernel_a = TransitionKernel::one_d(j["right_a"].get<double>());
      t.kernel_b = TransitionKernel::one_d(j.at("right_b").get<double>());
    } else {
      t.kernel_a = kernel_from_weights(j.at("weights_a").get<std::vector<double>>());
      t.kernel_b = kernel_from_weights(j.at("weights_b").get<std::vector<double>>());
    }
    t.prob_a = j.value("prob_a", 0.5);
    return EnvironmentLaw(std::move(t), kappa);
  }
  if (kind == "dirichlet") {
    const auto conc = j.at("concentration").get<std::vector<double>>();
    DirichletLaw dl;
    dl.concentration.resize(static_cast<Eigen::Index>(conc.size()));
    for (std::size_t i = 0; i < conc.size(); ++i) dl.concentration[static_cast<Eigen::Index>(i)] = conc[i];
    return EnvironmentLaw(std::move(dl), kappa);
  }
  if (kind == "perturbed_srw") {
    const auto drift = j.at("drift").get<std::vector<double>>();
    PerturbedSRWLaw p;
    p.drift.resize(static_cast<Eigen::Index>(drift.size()));
    for (std::size_t i = 0; i < drift.size(); ++i) p.drift[static_cast<Eigen::Index>(i)] = drift[i];
    p.epsilon = j.value("epsilon", 0.0);
    return EnvironmentLaw(std::move(p), kappa);
  }
  throw ConfigError("unknown law kind: " + kind);
}

EnvironmentLaw constant_1d(double right) {
  return EnvironmentLaw(ConstantLaw{TransitionKernel::one_d(right)});
}

EnvironmentLaw two_point_1d(double right_a, double right_b, double prob_a) {
  return EnvironmentLaw(
      TwoPointLaw{TransitionKernel::one_d(right_a), TransitionKernel::one_d(right_b), prob_a});
}

}  // namespace rwre::env
