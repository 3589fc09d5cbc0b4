#include <gtest/gtest.h>

#include <array>
#include <numbers>

#include "equitrot/gates.hpp"
#include "equitrot/state.hpp"
#include "oracles.hpp"

using namespace equitrot;

TEST(StateVector, RejectsWrongLengthAndNorm) {
  EXPECT_THROW(StateVector(2, CVector::Ones(3)), std::invalid_argument);
  EXPECT_THROW(StateVector(2, CVector::Ones(4)), std::invalid_argument);
  EXPECT_NO_THROW(StateVector::normalized(2, CVector::Ones(4)));
  EXPECT_THROW(check_qubit_count(0), std::invalid_argument);
  EXPECT_THROW(check_qubit_count(kMaxQubits + 1), std::invalid_argument);
}

TEST(StateVector, BasisState) {
  const auto s = basis_state(3, 5);
  EXPECT_EQ(s[5], Complex(1.0));
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
  EXPECT_THROW(basis_state(3, 8), std::out_of_range);
}

TEST(StateVector, FidelityAndInnerProduct) {
  const auto a = basis_state(2, 0);
  const auto b = basis_state(2, 3);
  EXPECT_DOUBLE_EQ(fidelity(a, a), 1.0);
  EXPECT_DOUBLE_EQ(fidelity(a, b), 0.0);
  CVector plus = CVector::Zero(4);
  plus[0] = plus[3] = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(fidelity(a, StateVector(2, plus)), 0.5, 1e-15);
  EXPECT_THROW(fidelity(a, basis_state(3, 0)), std::invalid_argument);
}

TEST(ApplyGate, SingleQubitMatchesDenseEmbedding) {
  std::mt19937_64 rng(11);
  for (int q = 0; q < 4; ++q) {
    const auto psi = oracle::random_vector(16, rng);
    const auto u = oracle::random_unitary(2, rng);
    StateVector s(4, psi);
    apply_gate(s, u, std::array{q});
    const oracle::Vec expected = oracle::embed(u, {q}, 4) * psi;
    EXPECT_LT((s.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-13) << "qubit " << q;
  }
}

TEST(ApplyGate, TwoQubitMatchesDenseEmbeddingForAllOrderedPairs) {
  std::mt19937_64 rng(12);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      const auto psi = oracle::random_vector(16, rng);
      const auto u = oracle::random_unitary(4, rng);
      StateVector s(4, psi);
      apply_gate(s, u, std::array{a, b});
      const oracle::Vec expected = oracle::embed(u, {a, b}, 4) * psi;
      EXPECT_LT((s.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-13) << a << "," << b;
    }
  }
}

TEST(ApplyGate, ThreeQubitMatchesDenseEmbedding) {
  std::mt19937_64 rng(13);
  const std::vector<std::vector<int>> target_sets{{0, 1, 2}, {3, 0, 2}, {4, 2, 1}};
  for (const auto& t : target_sets) {
    const auto psi = oracle::random_vector(32, rng);
    const auto u = oracle::random_unitary(8, rng);
    StateVector s(5, psi);
    apply_gate(s, u, t);
    const oracle::Vec expected = oracle::embed(u, t, 5) * psi;
    EXPECT_LT((s.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(ApplyGate, RejectsBadTargets) {
  StateVector s = basis_state(3, 0);
  EXPECT_THROW(apply_gate(s, gates::cnot(), std::array{0, 0}), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, gates::cnot(), std::array{0, 3}), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, gates::cnot(), std::array{0}), std::invalid_argument);
}

TEST(ApplyGate, CnotControlIsFirstTarget) {
  StateVector s = basis_state(2, 0b10);  // qubit 1 set
  apply_gate(s, gates::cnot(), std::array{1, 0});
  EXPECT_NEAR(std::abs(s[0b11]), 1.0, 1e-15);
  StateVector t = basis_state(2, 0b10);
  apply_gate(t, gates::cnot(), std::array{0, 1});
  EXPECT_NEAR(std::abs(t[0b10]), 1.0, 1e-15);
}

TEST(GateMatrix, ValidatesUnitarityAndSize) {
  EXPECT_NO_THROW(GateMatrix(gates::cnot()));
  EXPECT_THROW(GateMatrix(CMatrix::Ones(2, 2)), std::invalid_argument);
  EXPECT_THROW(GateMatrix(CMatrix::Identity(3, 3)), std::invalid_argument);
  EXPECT_EQ(GateMatrix(gates::identity(8)).n_targets(), 3);
}

TEST(ReducedDensity, MatchesFullDensityMatrixPartialTrace) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = oracle::random_vector(8, rng);
    const StateVector s(3, psi);
    for (int q = 0; q < 3; ++q) {
      const Eigen::Matrix2cd got = reduced_density_1q(s, q);
      EXPECT_LT((got - oracle::reduced(psi, 3, q)).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(RandomSu2, IsSpecialUnitary) {
  Rng rng(15);
  for (int i = 0; i < 50; ++i) {
    const CMatrix v = random_su2(rng).matrix();
    EXPECT_LT((v * v.adjoint() - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(std::abs(v.determinant() - Complex(1.0)), 0.0, 1e-14);
  }
}

TEST(RandomSu2, HaarMomentsOfFirstEntry) {
  // For Haar SU(2), |U_00|^2 is uniform on [0, 1]: mean 1/2, second moment 1/3.
  Rng rng(16);
  const int n = 40000;
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = std::norm(random_su2(rng).matrix()(0, 0));
    m1 += p;
    m2 += p * p;
  }
  EXPECT_NEAR(m1 / n, 0.5, 0.01);
  EXPECT_NEAR(m2 / n, 1.0 / 3.0, 0.01);
}

TEST(HaarState, NormalizedAndDeterministic) {
  Rng a(17), b(17);
  const auto s = haar_random_state(5, a);
  const auto t = haar_random_state(5, b);
  EXPECT_NEAR(s.norm(), 1.0, 1e-14);
  EXPECT_EQ(s.amplitudes(), t.amplitudes());
}
