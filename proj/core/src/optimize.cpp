#include "equitrot/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

namespace equitrot {

void LossSpec::validate() const {
  if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0) {
    throw std::invalid_argument("loss weights alpha, beta must lie in [0, 1]");
  }
  if (regularized() && !previous_params) {
    throw std::invalid_argument("regularized loss needs the previous parameters");
  }
}

std::string loss_kind_name(LossSpec::Kind kind) {
  switch (kind) {
    case LossSpec::Kind::Infidelity: return "infidelity";
    case LossSpec::Kind::FixedRegularized: return "fixed_regularized";
    case LossSpec::Kind::DynamicWeight: return "dynamic_weight";
  }
  return "unknown";
}

LossSpec::Kind parse_loss_kind(const std::string& name) {
  for (auto k : {LossSpec::Kind::Infidelity, LossSpec::Kind::FixedRegularized,
                 LossSpec::Kind::DynamicWeight}) {
    if (loss_kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown loss kind '" + name + "'");
}

double infidelity_loss(std::span<const double> params, const StateVector& target,
                       const Ansatz& ansatz) {
  return 1.0 - fidelity(ansatz.prepare(params), target);
}

double infidelity_loss(std::span<const double> params, const StateVector& target,
                       const AnsatzSpec& spec) {
  return infidelity_loss(params, target, Ansatz(spec));
}

double smoothed_distance(std::span<const double> params, std::span<const double> prev,
                         double gamma, double c) {
  if (params.size() != prev.size()) {
    throw std::invalid_argument("parameter vectors differ in length");
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double d = params[i] - prev[i];
    sq += d * d;
  }
  return 1.0 / (1.0 + std::exp(-(gamma * sq - c)));
}

double fixed_regularized_loss(double fidelity, double distance, double alpha, double beta) {
  return alpha * (1.0 - fidelity) + beta * distance;
}

double dynamic_weight_loss(double fidelity, double distance, double alpha) {
  return alpha * (1.0 - fidelity) + fidelity * distance;
}

double evaluate_loss(const LossSpec& loss, const Ansatz& ansatz, const StateVector& target,
                     std::span<const double> params) {
  return combine_loss(loss, fidelity(ansatz.prepare(params), target), params);
}

double combine_loss(const LossSpec& loss, double f, std::span<const double> params) {
  if (loss.kind == LossSpec::Kind::Infidelity) return 1.0 - f;
  if (!loss.previous_params) {
    throw std::invalid_argument("regularized loss needs the previous parameters");
  }
  const double d = smoothed_distance(params, *loss.previous_params, loss.gamma, loss.c);
  return loss.kind == LossSpec::Kind::FixedRegularized
             ? fixed_regularized_loss(f, d, loss.alpha, loss.beta)
             : dynamic_weight_loss(f, d, loss.alpha);
}

namespace {

double checked(double v) {
  if (!std::isfinite(v)) throw NumericalError("loss evaluated to a non-finite value");
  return v;
}

}  // namespace

NftSweepResult nft_sweep(const LossFunction& loss, ParamVector params) {
  constexpr double kShift = 2.0 * std::numbers::pi / 3.0;
  const double sqrt3 = std::sqrt(3.0);
  NftSweepResult out;
  double current = checked(loss(params));
  out.evaluations = 1;
  for (std::size_t j = 0; j < params.size(); ++j) {
    const double x = params[j];
    params[j] = x + kShift;
    const double plus = checked(loss(params));
    params[j] = x - kShift;
    const double minus = checked(loss(params));
    out.evaluations += 2;

    // L(x + d) = A cos d + B sin d + C
    const double c = (current + plus + minus) / 3.0;
    const double a = current - c;
    const double b = (plus - minus) / sqrt3;
    const double amplitude = std::hypot(a, b);
    if (amplitude <= 1e-14 * std::max(1.0, std::abs(c))) {
      params[j] = x;
      continue;
    }
    params[j] = x + std::atan2(-b, -a);
    current = c - amplitude;
  }
  out.params = std::move(params);
  out.loss = current;
  return out;
}

TrainResult nft_minimize(const LossFunction& loss, ParamVector init, const NftSettings& settings) {
  if (settings.sweeps < 1) throw std::invalid_argument("NFT needs at least one sweep");
  TrainResult result;
  result.params = std::move(init);
  double previous = std::numeric_limits<double>::infinity();
  for (int s = 0; s < settings.sweeps; ++s) {
    auto sweep = nft_sweep(loss, std::move(result.params));
    result.params = std::move(sweep.params);
    result.evaluations += sweep.evaluations;
    result.loss_trace.push_back(sweep.loss);
    if (previous - sweep.loss < settings.tolerance) break;
    previous = sweep.loss;
  }
  return result;
}

NftSweepResult nft_composite_sweep(const LossFunction& fidelity, const CompositeLoss& combine,
                                   ParamVector params) {
  constexpr double kShift = 2.0 * std::numbers::pi / 3.0;
  constexpr int kGrid = 720;  // steps over the window [-2pi, 2pi]
  constexpr double kWindow = 2.0 * std::numbers::pi;
  constexpr double kStep = 2.0 * kWindow / kGrid;
  const double sqrt3 = std::sqrt(3.0);

  NftSweepResult out;
  double f_now = checked(fidelity(params));
  out.evaluations = 1;
  for (std::size_t j = 0; j < params.size(); ++j) {
    const double x = params[j];
    params[j] = x + kShift;
    const double plus = checked(fidelity(params));
    params[j] = x - kShift;
    const double minus = checked(fidelity(params));
    out.evaluations += 2;

    const double c = (f_now + plus + minus) / 3.0;
    const double a = f_now - c;
    const double b = (plus - minus) / sqrt3;
    const auto model = [&](double d) { return std::clamp(c + a * std::cos(d) + b * std::sin(d), 0.0, 1.0); };
    const auto along = [&](double d) {
      params[j] = x + d;
      return checked(combine(model(d), params));
    };

    double best_d = 0.0;
    double best = along(0.0);
    for (int g = 0; g <= kGrid; ++g) {
      const double d = -kWindow + g * kStep;
      const double v = along(d);
      if (v < best) {
        best = v;
        best_d = d;
      }
    }
    const auto [d_ref, v_ref] = boost::math::tools::brent_find_minima(
        along, best_d - kStep, best_d + kStep, std::numeric_limits<double>::digits / 2);
    if (v_ref < best) best_d = d_ref;
    params[j] = x + best_d;
    f_now = model(best_d);
  }
  out.loss = checked(combine(f_now, params));
  out.params = std::move(params);
  return out;
}

TrainResult nft_composite_minimize(const LossFunction& fidelity, const CompositeLoss& combine,
                                   ParamVector init, const NftSettings& settings) {
  if (settings.sweeps < 1) throw std::invalid_argument("NFT needs at least one sweep");
  TrainResult result;
  result.params = std::move(init);
  double previous = std::numeric_limits<double>::infinity();
  for (int s = 0; s < settings.sweeps; ++s) {
    auto sweep = nft_composite_sweep(fidelity, combine, std::move(result.params));
    result.params = std::move(sweep.params);
    result.evaluations += sweep.evaluations;
    result.loss_trace.push_back(sweep.loss);
    if (previous - sweep.loss < settings.tolerance) break;
    previous = sweep.loss;
  }
  return result;
}

namespace {

struct SpsaRun {
  TrainResult result;  // params hold the final iterate
  ParamVector best_evaluated;
};

SpsaRun run_spsa(const LossFunction& loss, const ParamVector& init,
                 const SpsaSettings& settings, std::uint64_t seed) {
  if (settings.iterations < 1) throw std::invalid_argument("SPSA needs at least one iteration");
  const double stability =
      settings.stability < 0.0 ? settings.iterations / 10.0 : settings.stability;
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5);

  TrainResult result;
  ParamVector theta = init;
  ParamVector best = init;
  double best_loss = std::numeric_limits<double>::infinity();
  ParamVector delta(theta.size()), plus(theta.size()), minus(theta.size());

  for (int k = 0; k < settings.iterations; ++k) {
    const double ak = settings.a / std::pow(k + 1 + stability, settings.alpha);
    const double ck = settings.c / std::pow(k + 1, settings.gamma);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      delta[i] = coin(rng) ? 1.0 : -1.0;
      plus[i] = theta[i] + ck * delta[i];
      minus[i] = theta[i] - ck * delta[i];
    }
    const double lp = checked(loss(plus));
    const double lm = checked(loss(minus));
    result.evaluations += 2;
    result.loss_trace.push_back(0.5 * (lp + lm));
    if (lp < best_loss) {
      best_loss = lp;
      best = plus;
    }
    if (lm < best_loss) {
      best_loss = lm;
      best = minus;
    }
    const double diff = (lp - lm) / (2.0 * ck);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double step = std::clamp(ak * diff / delta[i], -settings.max_step, settings.max_step);
      theta[i] -= step;
    }
  }
  result.params = std::move(theta);
  return {std::move(result), std::move(best)};
}

}  // namespace

TrainResult spsa_minimize(const LossFunction& loss, const ParamVector& init,
                          const SpsaSettings& settings, std::uint64_t seed) {
  return run_spsa(loss, init, settings, seed).result;
}

double parameter_shift_gradient(const LossFunction& loss, std::span<const double> params,
                                std::size_t index, double shift, double coeff) {
  if (index >= params.size()) throw std::out_of_range("parameter index out of range");
  ParamVector p(params.begin(), params.end());
  p[index] = params[index] + shift;
  const double up = loss(p);
  p[index] = params[index] - shift;
  const double down = loss(p);
  return coeff * (up - down);
}

ParamVector canonicalize(std::span<const double> params) {
  ParamVector out(params.begin(), params.end());
  for (double& v : out) {
    v = std::fmod(v, kParamPeriod);
    if (v < 0.0) v += kParamPeriod;
    if (v >= kParamPeriod) v = 0.0;
  }
  return out;
}

TrainResult train(const StateVector& target, const AnsatzSpec& ansatz, const LossSpec& loss,
                  const OptimizerSpec& optimizer, const ParamVector& init) {
  return train(target, Ansatz(ansatz), loss, optimizer, init);
}

TrainResult train(const StateVector& target, const Ansatz& ansatz, const LossSpec& loss,
                  const OptimizerSpec& optimizer, const ParamVector& init) {
  loss.validate();
  if (init.size() != ansatz.param_count()) {
    throw std::invalid_argument("initial parameters have length " + std::to_string(init.size()) +
                                ", ansatz expects " + std::to_string(ansatz.param_count()));
  }
  if (target.n_qubits() != ansatz.spec().n_qubits) {
    throw std::invalid_argument("target and ansatz qubit counts differ");
  }
  const LossFunction objective = [&](std::span<const double> p) {
    return evaluate_loss(loss, ansatz, target, p);
  };

  TrainResult result;
  if (!loss.regularized()) {
    result = nft_minimize(objective, init, optimizer.nft);
  } else if (optimizer.regularized == OptimizerSpec::Regularized::Nft) {
    const LossFunction fid = [&](std::span<const double> p) {
      return fidelity(ansatz.prepare(p), target);
    };
    const CompositeLoss combine = [&](double f, std::span<const double> p) {
      return combine_loss(loss, f, p);
    };
    result = nft_composite_minimize(fid, combine, init, optimizer.nft);
  } else {
    auto run = run_spsa(objective, init, optimizer.spsa, optimizer.seed);
    result = std::move(run.result);
    // The best perturbed point and the starting point compete with the
    // final iterate.
    double best = objective(result.params);
    result.evaluations += 1;
    for (const ParamVector* candidate : std::array<const ParamVector*, 2>{&init, &run.best_evaluated}) {
      const double v = objective(*candidate);
      result.evaluations += 1;
      if (v < best) {
        best = v;
        result.params = *candidate;
      }
    }
  }
  result.params = canonicalize(result.params);
  result.final_fidelity = fidelity(ansatz.prepare(result.params), target);
  return result;
}

}  // namespace equitrot
