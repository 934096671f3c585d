#pragma once

#include <rwre/rng.hpp>
#include <rwre/types.hpp>

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <variant>

namespace rwre::env {

/// Nearest-neighbour jump probabilities at one site. Weight index 2*axis is
/// +e_{axis+1}, 2*axis+1 is -e_{axis+1}.
struct TransitionKernel {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 2 * kMaxDim, 1> w;

  int dim() const { return static_cast<int>(w.size()) / 2; }
  double weight(int axis, int sign) const { return w[2 * axis + (sign > 0 ? 0 : 1)]; }
  double min_weight() const { return w.minCoeff(); }

  /// Weights nonnegative and summing to 1 within `tol`; at least `kappa`
  /// everywhere when a floor is supplied.
  bool valid(double tol = 1e-12, std::optional<double> kappa = std::nullopt) const;

  /// Sample a direction index from u in [0,1).
  int sample(double u) const;

  static TransitionKernel symmetric(int d);
  /// d = 1 kernel with the given probability of stepping right.
  static TransitionKernel one_d(double right);
};

struct ConstantLaw {
  TransitionKernel kernel;
};

struct TwoPointLaw {
  TransitionKernel kernel_a;
  TransitionKernel kernel_b;
  double prob_a = 0.5;
};

struct DirichletLaw {
  Vec concentration;  // one entry per direction index, all positive
};

/// Site kernel 1/(2d) +- (drift_i + eps * U_i)/2 on +-e_i with U_i i.i.d.
/// uniform on [-1, 1]; mean drift is exactly `drift`.
struct PerturbedSRWLaw {
  Vec drift;
  double epsilon = 0.0;
};

/// Closed-form moments of rho = w(0,+1)/w(0,-1) for d = 1 laws.
struct RhoMoments {
  double e_ln_rho = 0.0;
  double e_rho = 0.0;
  double e_rho_inv = 0.0;
};

class EnvironmentLaw {
 public:
  explicit EnvironmentLaw(ConstantLaw law, std::optional<double> kappa = std::nullopt);
  explicit EnvironmentLaw(TwoPointLaw law, std::optional<double> kappa = std::nullopt);
  explicit EnvironmentLaw(DirichletLaw law, std::optional<double> kappa = std::nullopt);
  explicit EnvironmentLaw(PerturbedSRWLaw law, std::optional<double> kappa = std::nullopt);

  int d() const { return d_; }
  const char* kind() const;

  /// Declared uniform-ellipticity constant; empty for elliptic-only laws.
  std::optional<double> kappa() const { return kappa_; }
  bool uniformly_elliptic() const { return kappa_.has_value(); }

  /// True when every site kernel is the same (no disorder).
  bool deterministic() const;

  /// Closed-form 1D moments; empty when the law kind does not carry them.
  std::optional<RhoMoments> rho_moments() const;

  TransitionKernel sample_kernel(rng::Stream& stream) const;

  nlohmann::json to_json() const;
  static EnvironmentLaw from_json(const nlohmann::json& j);

 private:
  void validate(std::optional<double> declared_kappa);

  std::variant<ConstantLaw, TwoPointLaw, DirichletLaw, PerturbedSRWLaw> law_;
  int d_ = 0;
  std::optional<double> kappa_;
};

/// Convenience: d = 1 constant law with right probability p.
EnvironmentLaw constant_1d(double right);
/// Convenience: d = 1 two-point law, right probability a or b with prob 1/2.
EnvironmentLaw two_point_1d(double right_a, double right_b, double prob_a = 0.5);

}  // namespace rwre::env
