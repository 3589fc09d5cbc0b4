#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equitrot/ansatz.hpp"

namespace equitrot {

using ParamVector = std::vector<double>;
using LossFunction = std::function<double(std::span<const double>)>;

inline constexpr double kParamPeriod = 4.0 * std::numbers::pi;

struct LossSpec {
  enum class Kind { Infidelity, FixedRegularized, DynamicWeight };

  Kind kind = Kind::Infidelity;
  double alpha = 0.5;
  double beta = 0.5;
  double gamma = 0.5;
  double c = 5.0;
  /// theta^{(r-1)}; required by the regularized kinds.
  std::optional<ParamVector> previous_params;

  bool regularized() const { return kind != Kind::Infidelity; }
  void validate() const;
};

std::string loss_kind_name(LossSpec::Kind kind);
/// Combines a fidelity with the distance term for the regularized kinds.
double combine_loss(const LossSpec& loss, double fidelity, std::span<const double> params);
LossSpec::Kind parse_loss_kind(const std::string& name);

struct NftSettings {
  int sweeps = 200;
  /// Stop once a full sweep lowers the loss by less than this.
  double tolerance = 1e-12;
};

struct SpsaSettings {
  int iterations = 300;
  double a = 0.2;
  double c = 0.1;
  /// Stability constant; negative means iterations / 10.
  double stability = -1.0;
  double alpha = 0.602;
  double gamma = 0.101;
  /// Per-component clip on a single update.
  double max_step = 0.5;
};

struct OptimizerSpec {
  /// Optimizer for the regularized loss kinds. Plain infidelity always
  /// uses NFT.
  enum class Regularized { Nft, Spsa };

  Regularized regularized = Regularized::Nft;
  NftSettings nft;
  SpsaSettings spsa;
  std::uint64_t seed = 0;
};

struct TrainResult {
  ParamVector params;
  double final_fidelity = 0.0;
  std::vector<double> loss_trace;
  long evaluations = 0;
};

double infidelity_loss(std::span<const double> params, const StateVector& target,
                       const Ansatz& ansatz);
double infidelity_loss(std::span<const double> params, const StateVector& target,
                       const AnsatzSpec& spec);

/// sigma(gamma |params - prev|^2 - c) with the logistic sigma.
double smoothed_distance(std::span<const double> params, std::span<const double> prev,
                         double gamma, double c);

/// alpha (1 - F) + beta D
double fixed_regularized_loss(double fidelity, double distance, double alpha, double beta);
/// alpha (1 - F) + F D
double dynamic_weight_loss(double fidelity, double distance, double alpha);

/// Loss of `params` for the given kind; throws when a regularized kind has
/// no previous parameters.
double evaluate_loss(const LossSpec& loss, const Ansatz& ansatz, const StateVector& target,
                     std::span<const double> params);

struct NftSweepResult {
  ParamVector params;
  double loss = 0.0;
  long evaluations = 0;
};

/// One pass of sequential sinusoidal minimization over every parameter,
/// fitting a1 cos(x - a2) + a3 from the loss at x and x +- 2pi/3.
NftSweepResult nft_sweep(const LossFunction& loss, ParamVector params);

TrainResult nft_minimize(const LossFunction& loss, ParamVector init, const NftSettings& settings);

/// Loss assembled from the fidelity and the parameters themselves.
using CompositeLoss = std::function<double(double fidelity, std::span<const double> params)>;

/// Sequential minimization of combine(F(theta), theta) for F sinusoidal in
/// each parameter and `combine` cheap to evaluate. Per parameter, F is
/// fitted from three evaluations and the composite loss is minimized
/// numerically along that coordinate. The reported loss is the composite.
NftSweepResult nft_composite_sweep(const LossFunction& fidelity, const CompositeLoss& combine,
                                   ParamVector params);
TrainResult nft_composite_minimize(const LossFunction& fidelity, const CompositeLoss& combine,
                                   ParamVector init, const NftSettings& settings);

/// SPSA with gains a_k = a / (k + 1 + A)^alpha and c_k = c / (k + 1)^gamma.
/// Uses exactly two loss evaluations per iteration and returns the final
/// iterate. Throws NumericalError on a non-finite loss.
TrainResult spsa_minimize(const LossFunction& loss, const ParamVector& init,
                          const SpsaSettings& settings, std::uint64_t seed);

/// coeff * (L(theta + shift e_i) - L(theta - shift e_i))
double parameter_shift_gradient(const LossFunction& loss, std::span<const double> params,
                                std::size_t index, double shift = std::numbers::pi / 2,
                                double coeff = 0.5);

/// Maps each entry into [0, 4pi).
ParamVector canonicalize(std::span<const double> params);

/// Plain infidelity runs NFT; regularized kinds run the composite NFT or
/// SPSA per optimizer.regularized. The result is canonicalized.
TrainResult train(const StateVector& target, const AnsatzSpec& ansatz, const LossSpec& loss,
                  const OptimizerSpec& optimizer, const ParamVector& init);
TrainResult train(const StateVector& target, const Ansatz& ansatz, const LossSpec& loss,
                  const OptimizerSpec& optimizer, const ParamVector& init);

}  // namespace equitrot
