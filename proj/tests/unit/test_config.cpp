#include <gtest/gtest.h>

#include "equitrot/config.hpp"

using namespace equitrot;

TEST(Config, DefaultsValidate) {
  for (int n : {4, 8, 10, 12}) {
    const auto c = default_config(n);
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.ansatz.n_qubits, n);
    EXPECT_EQ(c.ansatz.layers, default_layers(n));
  }
}

TEST(Config, JsonRoundTrip) {
  auto c = default_config(6);
  c.seeds = {7, 9};
  c.r_train = {2, 10};
  c.r_eval = {1, 15};
  c.loss.kind = LossSpec::Kind::DynamicWeight;
  c.loss.gamma = 1.25;
  c.extrapolator.kind = ExtrapolatorSpec::Kind::Polynomial;
  c.extrapolator.window = 3;
  c.extrapolator.rank = RankPolicy::fixed(4);
  c.optimizer.regularized = OptimizerSpec::Regularized::Spsa;
  c.trotter_compare.initial_state = TrotterCompareSpec::Input::Neel;
  c.trotter_compare.schemes = {TrotterScheme::suzuki(4)};
  c.metrics.topologies = {Topology::GeneralLinear};
  c.threads = 3;

  const std::string text = config_to_json(c);
  const auto back = config_from_json(text);
  EXPECT_EQ(config_to_json(back), text);
  EXPECT_EQ(back.seeds, c.seeds);
  EXPECT_EQ(back.r_train.first, 2);
  EXPECT_EQ(back.extrapolator.window, 3);
  EXPECT_EQ(back.optimizer.regularized, OptimizerSpec::Regularized::Spsa);
  EXPECT_EQ(back.trotter_compare.schemes.at(0).name(), "suzuki4");
  EXPECT_EQ(back.trotter_compare.initial_state, TrotterCompareSpec::Input::Neel);
}

TEST(Config, PartialDocumentKeepsDefaults) {
  const auto c = config_from_json(R"({"chain": {"n_qubits": 6}, "seeds": [5]})");
  EXPECT_EQ(c.chain.n_qubits, 6);
  EXPECT_EQ(c.ansatz.n_qubits, 6);
  EXPECT_EQ(c.ansatz.layers, default_layers(6));
  EXPECT_EQ(c.seeds, std::vector<std::uint64_t>{5});
  EXPECT_EQ(c.r_train.last, default_config().r_train.last);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(config_from_json("{"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"bogus": 1})"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"trotter_compare": {"initial_state": "ghz"}})"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"loss": {"alpha": 0.5, "delta": 1}})"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"r_train": [5, 2]})"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"r_train": [1, 20]})"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"seeds": []})"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"chain": {"n_qubits": "eight"}})"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"extrapolator": {"kind": "magic"}})"), std::invalid_argument);
  EXPECT_THROW(config_from_json(R"({"threads": 0})"), std::invalid_argument);
  EXPECT_THROW(load_config("/nonexistent/config.json"), std::invalid_argument);
}

TEST(IntRange, Values) {
  const IntRange r{3, 6};
  EXPECT_EQ(r.values(), (std::vector<int>{3, 4, 5, 6}));
  EXPECT_EQ(r.size(), 4u);
  EXPECT_TRUE(r.contains(6));
  EXPECT_FALSE(r.contains(7));
}
