#include <gtest/gtest.h>

#include "equitrot/circuit.hpp"
#include "equitrot/gates.hpp"
#include "oracles.hpp"

using namespace equitrot;

TEST(Circuit, RunMatchesProductOfEmbeddedGates) {
  const int n = 4;
  Circuit c(n, 3);
  c.add(CircuitOp::gate(GateKind::RX, {0}, 0.4));
  c.add(CircuitOp::slot(GateKind::SU2Block, {1, 2}, 0));
  c.add(CircuitOp::gate(GateKind::CNOT, {3, 0}));
  c.add(CircuitOp::slot(GateKind::RZZ, {2, 0}, 1));
  c.add(CircuitOp::gate(GateKind::XXYYZZ, {3, 2}, 0.21));
  c.add(CircuitOp::slot(GateKind::RZ, {3}, 2));
  c.add(CircuitOp::gate(GateKind::X, {1}));
  c.add(CircuitOp::gate(GateKind::RYY, {0, 3}, -1.1));
  c.add(CircuitOp::gate(GateKind::RXX, {1, 3}, 0.7));

  const std::vector<double> params{0.9, -0.3, 2.5};
  oracle::Mat u = oracle::Mat::Identity(16, 16);
  u = oracle::embed(gates::rx(0.4), {0}, n) * u;
  u = oracle::embed(gates::su2_block(0.9), {1, 2}, n) * u;
  u = oracle::embed(gates::cnot(), {3, 0}, n) * u;
  u = oracle::embed(gates::rzz(-0.3), {2, 0}, n) * u;
  u = oracle::embed(gates::xxyyzz(0.21), {3, 2}, n) * u;
  u = oracle::embed(gates::rz(2.5), {3}, n) * u;
  u = oracle::embed(gates::pauli_x(), {1}, n) * u;
  u = oracle::embed(gates::ryy(-1.1), {0, 3}, n) * u;
  u = oracle::embed(gates::rxx(0.7), {1, 3}, n) * u;

  std::mt19937_64 rng(3);
  const auto psi = oracle::random_vector(16, rng);
  const auto out = run_circuit(c, StateVector(n, psi), params);
  EXPECT_LT((out.amplitudes() - u * psi).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Circuit, FixedMatrixOp) {
  std::mt19937_64 rng(4);
  const auto m = oracle::random_unitary(8, rng);
  Circuit c(3, 0);
  c.add(CircuitOp::fixed(GateMatrix(m), {2, 0, 1}));
  const auto psi = oracle::random_vector(8, rng);
  const auto out = run_circuit(c, StateVector(3, psi));
  EXPECT_LT((out.amplitudes() - oracle::embed(m, {2, 0, 1}, 3) * psi).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Circuit, Validation) {
  Circuit c(3, 1);
  EXPECT_THROW(c.add(CircuitOp::gate(GateKind::CNOT, {0, 0})), std::invalid_argument);
  EXPECT_THROW(c.add(CircuitOp::gate(GateKind::CNOT, {0})), std::invalid_argument);
  EXPECT_THROW(c.add(CircuitOp::gate(GateKind::RX, {3})), std::invalid_argument);
  EXPECT_THROW(c.add(CircuitOp::slot(GateKind::RX, {0}, 1)), std::invalid_argument);
  EXPECT_THROW(c.add(CircuitOp::slot(GateKind::CNOT, {0, 1}, 0)), std::invalid_argument);
  c.add(CircuitOp::slot(GateKind::RX, {0}, 0));
  EXPECT_THROW(run_circuit(c, basis_state(3, 0), std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(run_circuit(c, basis_state(2, 0), std::vector<double>{0.1}), std::invalid_argument);
}

TEST(Circuit, GateKindMetadata) {
  EXPECT_EQ(gate_kind_arity(GateKind::SU2Block), 2);
  EXPECT_EQ(gate_kind_arity(GateKind::RX), 1);
  EXPECT_TRUE(gate_kind_is_parametric(GateKind::RZZ));
  EXPECT_FALSE(gate_kind_is_parametric(GateKind::CNOT));
  EXPECT_EQ(gate_kind_name(GateKind::XXYYZZ), "xxyyzz");
}
