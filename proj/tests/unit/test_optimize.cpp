#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "equitrot/optimize.hpp"
#include "oracles.hpp"

using namespace equitrot;

namespace {

constexpr double kPi = std::numbers::pi;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST(Losses, Arithmetic) {
  EXPECT_DOUBLE_EQ(fixed_regularized_loss(1.0, 0.0, 0.5, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(dynamic_weight_loss(1.0, 0.0, 0.5), 0.0);
  EXPECT_NEAR(fixed_regularized_loss(0.9, 0.2, 0.5, 0.5), 0.15, 1e-15);
  EXPECT_DOUBLE_EQ(dynamic_weight_loss(0.0, 0.7, 0.3), 0.3);
}

TEST(Losses, SmoothedDistance) {
  const std::vector<double> zero(3, 0.0), one{1.0, 0.0, 0.0}, far(3, 100.0);
  EXPECT_DOUBLE_EQ(smoothed_distance(zero, zero, 2.0, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(smoothed_distance(one, zero, 1.0, 1.0), 0.5);
  EXPECT_GT(smoothed_distance(far, zero, 2.0, 1.0), 0.999);
  EXPECT_NEAR(smoothed_distance(zero, zero, 2.0, 1.0), 1.0 / (1.0 + std::exp(1.0)), 1e-15);
  EXPECT_THROW(smoothed_distance(zero, std::vector<double>{1.0, 0.0}, 1.0, 1.0), std::invalid_argument);
}

TEST(Losses, InfidelityEndpoints) {
  const Ansatz ansatz(AnsatzSpec{4, 2});
  const std::vector<double> p{0.3, 1.2, 2.0, 0.1, 4.0, 5.5};
  const auto target = ansatz.prepare(p);
  EXPECT_NEAR(infidelity_loss(p, target, ansatz), 0.0, 1e-14);
  // The singlet sector cannot reach |0000>.
  EXPECT_NEAR(infidelity_loss(p, basis_state(4, 0), ansatz), 1.0, 1e-14);
}

TEST(Losses, RegularizedNeedsPrevious) {
  LossSpec spec{.kind = LossSpec::Kind::FixedRegularized, .previous_params = std::nullopt};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.previous_params = std::vector<double>{0.0};
  EXPECT_NO_THROW(spec.validate());
  spec.alpha = 1.5;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  EXPECT_EQ(parse_loss_kind(loss_kind_name(LossSpec::Kind::DynamicWeight)),
            LossSpec::Kind::DynamicWeight);
}

TEST(Nft, CosineMinimumInOneUpdate) {
  const LossFunction f = [](std::span<const double> p) { return std::cos(p[0]); };
  const auto r = nft_sweep(f, {0.4});
  EXPECT_NEAR(r.params[0], kPi, 1e-10);
  EXPECT_NEAR(r.loss, -1.0, 1e-12);
  EXPECT_EQ(r.evaluations, 3);
}

TEST(Nft, FlatLossLeavesParameters) {
  const LossFunction f = [](std::span<const double>) { return 0.25; };
  const auto r = nft_sweep(f, {0.4, -2.0});
  EXPECT_EQ(r.params, (std::vector<double>{0.4, -2.0}));
}

TEST(Nft, SingleBlockAgreesWithGridScan) {
  const Ansatz ansatz(AnsatzSpec{2, 1});
  // Target outside the ansatz orbit so the minimum is non-trivial.
  const StateVector target =
      StateVector::normalized(2, (CVector(4) << 0.3, Complex(0.5, 0.2), -0.7, 0.1).finished());
  const LossFunction loss = [&](std::span<const double> p) { return infidelity_loss(p, target, ansatz); };
  const auto r = nft_sweep(loss, {1.0});

  double grid_min = 1e9;
  const int points = 10000;
  for (int k = 0; k < points; ++k) {
    const double x = 4 * kPi * k / points;
    grid_min = std::min(grid_min, loss(std::vector<double>{x}));
  }
  EXPECT_NEAR(loss(r.params), grid_min, 1e-8);
  EXPECT_LE(loss(r.params), grid_min + 1e-12);
}

TEST(Nft, SweepsNeverIncreaseInfidelity) {
  const Ansatz ansatz(AnsatzSpec{4, 2});
  Rng rng(4);
  const auto target = haar_random_state(4, rng);
  const LossFunction loss = [&](std::span<const double> p) { return infidelity_loss(p, target, ansatz); };
  const auto r = nft_minimize(loss, std::vector<double>(6, 0.5), NftSettings{20, 0.0});
  for (std::size_t i = 1; i < r.loss_trace.size(); ++i) {
    EXPECT_LE(r.loss_trace[i], r.loss_trace[i - 1] + 1e-14);
  }
  EXPECT_THROW(nft_minimize(loss, std::vector<double>(6, 0.5), NftSettings{0, 0.0}),
               std::invalid_argument);
}

TEST(CompositeNft, MatchesGridScanOfRegularizedLoss) {
  const Ansatz ansatz(AnsatzSpec{2, 1});
  const StateVector target =
      StateVector::normalized(2, (CVector(4) << 0.1, Complex(0.6, -0.2), 0.5, 0.3).finished());
  LossSpec spec{.kind = LossSpec::Kind::FixedRegularized, .gamma = 0.5, .c = 2.0,
                .previous_params = std::vector<double>{2.0}};
  const LossFunction fid = [&](std::span<const double> p) {
    return fidelity(ansatz.prepare(p), target);
  };
  const CompositeLoss combine = [&](double f, std::span<const double> p) {
    return combine_loss(spec, f, p);
  };
  const LossFunction full = [&](std::span<const double> p) {
    return evaluate_loss(spec, ansatz, target, p);
  };
  const auto r = nft_composite_sweep(fid, combine, {2.0});

  // The window is +-2pi around the start.
  double grid_min = 1e9;
  const int points = 20000;
  for (int k = 0; k <= points; ++k) {
    const double x = 2.0 - 2 * kPi + 4 * kPi * k / points;
    grid_min = std::min(grid_min, full(std::vector<double>{x}));
  }
  EXPECT_NEAR(full(r.params), grid_min, 1e-8);
  EXPECT_NEAR(r.loss, full(r.params), 1e-12);
}

TEST(ParameterShift, CosineDerivative) {
  const LossFunction f = [](std::span<const double> p) { return std::cos(p[0]); };
  for (double x : {0.0, 0.3, 1.7, -2.2}) {
    EXPECT_NEAR(parameter_shift_gradient(f, std::vector<double>{x}, 0), -std::sin(x), 1e-12);
  }
  const LossFunction flat = [](std::span<const double>) { return 3.0; };
  EXPECT_EQ(parameter_shift_gradient(flat, std::vector<double>{1.0}, 0), 0.0);
}

TEST(ParameterShift, MatchesFiniteDifferencesOnTwoQubitAnsatz) {
  // Every parameter enters as e^{i theta} on the singlet, so the loss is a
  // first harmonic in theta and the pi/2 rule is exact.
  const Ansatz ansatz(AnsatzSpec{2, 3});
  const StateVector target =
      StateVector::normalized(2, (CVector(4) << 0.2, Complex(0.4, 0.5), -0.6, 0.3).finished());
  const LossFunction loss = [&](std::span<const double> p) { return infidelity_loss(p, target, ansatz); };
  const std::vector<double> theta{0.7, 2.1, 5.3};
  const double h = 1e-5;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    auto up = theta, down = theta;
    up[i] += h;
    down[i] -= h;
    const double fd = (loss(up) - loss(down)) / (2 * h);
    EXPECT_NEAR(parameter_shift_gradient(loss, theta, i), fd, 1e-6);
  }
}

TEST(Spsa, ConvergesOnQuadratic) {
  const LossFunction bowl = [](std::span<const double> p) {
    double s = 0.0;
    for (double x : p) s += x * x;
    return s;
  };
  SpsaSettings settings;
  settings.iterations = 500;
  std::vector<double> norms;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = spsa_minimize(bowl, std::vector<double>(10, 0.5), settings, seed);
    norms.push_back(std::sqrt(bowl(r.params)));
    EXPECT_EQ(r.evaluations, 2 * settings.iterations);
  }
  EXPECT_LT(median(norms), 0.05);
}

TEST(Spsa, DeterministicAndRejectsZeroIterations) {
  const LossFunction f = [](std::span<const double> p) { return std::sin(p[0]) + p[1] * p[1]; };
  SpsaSettings settings;
  settings.iterations = 50;
  const auto a = spsa_minimize(f, {0.1, 0.2}, settings, 42);
  const auto b = spsa_minimize(f, {0.1, 0.2}, settings, 42);
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.loss_trace, b.loss_trace);
  settings.iterations = 0;
  EXPECT_THROW(spsa_minimize(f, {0.1, 0.2}, settings, 42), std::invalid_argument);
}

TEST(Spsa, NonFiniteLossAborts) {
  const LossFunction f = [](std::span<const double>) { return std::nan(""); };
  EXPECT_THROW(spsa_minimize(f, {0.0}, SpsaSettings{}, 1), NumericalError);
}

TEST(Spsa, GradientEstimateIsUnbiased) {
  // E[(L(x + c d) - L(x - c d)) / (2 c d_i)] = dL/dx_i for a quadratic.
  const std::vector<double> x{0.3, -0.8, 1.1, 0.5};
  const std::vector<double> w{1.0, 2.0, 0.5, 3.0};
  auto loss = [&](const std::vector<double>& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += w[i] * p[i] * p[i];
    return s;
  };
  Rng rng(5);
  std::bernoulli_distribution coin(0.5);
  const double c = 0.1;
  std::vector<double> mean(x.size(), 0.0);
  const int samples = 10000;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> d(x.size()), plus = x, minus = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
      d[i] = coin(rng) ? 1.0 : -1.0;
      plus[i] += c * d[i];
      minus[i] -= c * d[i];
    }
    const double diff = (loss(plus) - loss(minus)) / (2 * c);
    for (std::size_t i = 0; i < x.size(); ++i) mean[i] += diff / d[i] / samples;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double analytic = 2 * w[i] * x[i];
    EXPECT_NEAR(mean[i], analytic, 0.05 * std::abs(analytic) + 0.05);
  }
}

TEST(Canonicalize, WrapsIntoPeriodAndKeepsState) {
  const auto c = canonicalize(std::vector<double>{4 * kPi + 0.1, -0.1, 0.0, 12 * kPi});
  EXPECT_NEAR(c[0], 0.1, 1e-12);
  EXPECT_NEAR(c[1], 4 * kPi - 0.1, 1e-12);
  EXPECT_EQ(c[2], 0.0);
  EXPECT_GE(c[3], 0.0);
  EXPECT_LT(c[3], 4 * kPi);

  const Ansatz ansatz(AnsatzSpec{4, 2});
  const std::vector<double> p{-7.0, 13.5, 30.1, -0.2, 2.0, 100.0};
  EXPECT_NEAR(fidelity(ansatz.prepare(p), ansatz.prepare(canonicalize(p))), 1.0, 1e-12);
}

TEST(Train, ImmediateConvergenceOnReachableTarget) {
  const AnsatzSpec spec{4, 2};
  const std::vector<double> p{0.3, 1.2, 2.0, 0.1, 4.0, 5.5};
  const auto target = prepare_state(spec, p);
  const auto r = train(target, spec, LossSpec{}, OptimizerSpec{}, p);
  EXPECT_NEAR(r.final_fidelity, 1.0, 1e-12);
}

TEST(Train, RegularizedOptimizersBothRun) {
  const AnsatzSpec spec{4, 2};
  Rng rng(6);
  const std::vector<double> prev{0.3, 1.2, 2.0, 0.1, 4.0, 5.5};
  std::vector<double> shifted = prev;
  for (auto& x : shifted) x += 0.2;
  const auto target = prepare_state(spec, shifted);
  LossSpec loss{.kind = LossSpec::Kind::FixedRegularized, .previous_params = prev};
  OptimizerSpec opt;
  const auto nft = train(target, spec, loss, opt, prev);
  opt.regularized = OptimizerSpec::Regularized::Spsa;
  const auto spsa = train(target, spec, loss, opt, prev);
  EXPECT_GT(nft.final_fidelity, 0.99);
  EXPECT_GT(spsa.final_fidelity, fidelity(prepare_state(spec, prev), target));
  for (double x : nft.params) {
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 4 * kPi);
  }
  EXPECT_THROW(train(target, spec, loss, opt, std::vector<double>(3)), std::invalid_argument);
}
