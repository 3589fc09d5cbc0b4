#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "equitrot/ansatz.hpp"
#include "equitrot/gates.hpp"
#include "oracles.hpp"

using namespace equitrot;
using oracle::max_abs;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> angles(int n, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, hi);
  std::vector<double> out(n);
  for (auto& x : out) x = u(rng);
  return out;
}

}  // namespace

TEST(Gates, RotationsMatchMatrixExponential) {
  const auto xx = oracle::kron(oracle::pauli('X'), oracle::pauli('X'));
  const auto yy = oracle::kron(oracle::pauli('Y'), oracle::pauli('Y'));
  const auto zz = oracle::kron(oracle::pauli('Z'), oracle::pauli('Z'));
  for (double t : angles(20, 4 * kPi, 1)) {
    EXPECT_LT(max_abs(gates::rx(t) - oracle::expm_i(oracle::pauli('X'), t / 2)), 1e-13);
    EXPECT_LT(max_abs(gates::rz(t) - oracle::expm_i(oracle::pauli('Z'), t / 2)), 1e-13);
    EXPECT_LT(max_abs(gates::rxx(t) - oracle::expm_i(xx, t / 2)), 1e-13);
    EXPECT_LT(max_abs(gates::ryy(t) - oracle::expm_i(yy, t / 2)), 1e-13);
    EXPECT_LT(max_abs(gates::rzz(t) - oracle::expm_i(zz, t / 2)), 1e-13);
    EXPECT_LT(max_abs(gates::xxyyzz(t) - oracle::expm_i(xx + yy + zz, t)), 1e-12);
  }
}

TEST(Gates, CnotTruthTable) {
  const CMatrix c = gates::cnot();
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = expected(1, 1) = expected(2, 3) = expected(3, 2) = 1.0;
  EXPECT_EQ(c, expected);
}

TEST(Gates, Su2BlockActsOnSingletOnly) {
  // Singlet (|01> - |10>)/sqrt2 picks up e^{i theta}; the triplet is fixed.
  oracle::Vec singlet = oracle::Vec::Zero(4);
  singlet[1] = 1 / std::sqrt(2.0);
  singlet[2] = -1 / std::sqrt(2.0);
  for (double t : angles(10, 4 * kPi, 2)) {
    const CMatrix expected = CMatrix::Identity(4, 4) +
                             (std::exp(Complex(0, t)) - 1.0) * singlet * singlet.adjoint();
    EXPECT_LT(max_abs(gates::su2_block(t) - expected), 1e-14);
  }
}

TEST(Gates, Su2BlockDecompositionMatchesClosedForm) {
  for (double t : angles(50, 4 * kPi, 3)) {
    EXPECT_LT(max_abs(gates::su2_block_decomposed(t) - gates::su2_block(t)), 1e-13);
  }
}

TEST(Gates, Su2BlockPeriodAndComposition) {
  for (double t : angles(10, 4 * kPi, 4)) {
    EXPECT_LT(max_abs(gates::su2_block(t + 2 * kPi) - gates::su2_block(t)), 1e-12);
    EXPECT_LT(max_abs(gates::su2_block(t) * gates::su2_block(0.3) - gates::su2_block(t + 0.3)), 1e-13);
  }
}

TEST(Gates, Su2BlockCommutesWithGlobalRotations) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const CMatrix v = random_su2(rng).matrix();
    const CMatrix vv = gates::kron(v, v);
    for (double t : angles(20, 4 * kPi, 100 + i)) {
      const CMatrix u = gates::su2_block(t);
      EXPECT_LT(max_abs(vv * u - u * vv), 1e-10);
    }
  }
}

TEST(Gates, XxyyzzIsPhasedSu2Block) {
  for (double tau : angles(50, 2 * kPi, 6)) {
    EXPECT_LT(max_abs(gates::xxyyzz(tau) - std::exp(Complex(0, -tau)) * gates::su2_block(4 * tau)),
              1e-12);
  }
}

TEST(Gates, KronOrdering) {
  const CMatrix k = gates::kron(gates::pauli_x(), gates::identity(2));
  EXPECT_LT(max_abs(k - oracle::kron(oracle::pauli('X'), oracle::pauli('I'))), 0.0 + 1e-15);
}

TEST(Schur, TwoQubitDiagonalizesBlock) {
  const CMatrix s2 = schur2();
  EXPECT_LT(max_abs(s2 * s2.adjoint() - CMatrix::Identity(4, 4)), 1e-12);
  for (double t : angles(50, 4 * kPi, 7)) {
    CMatrix diag = CMatrix::Identity(4, 4);
    diag(3, 3) = std::exp(Complex(0, t));
    EXPECT_LT(max_abs(s2 * gates::su2_block(t) * s2.adjoint() - diag), 1e-12);
    EXPECT_LT(max_abs(v2(t) - gates::su2_block(t)), 1e-12);
  }
}

TEST(Schur, ThreeQubitIsUnitaryAndSeparatesSpinSectors) {
  const CMatrix s3 = schur3();
  ASSERT_EQ(s3.rows(), 8);
  EXPECT_LT(max_abs(s3 * s3.adjoint() - CMatrix::Identity(8, 8)), 1e-12);
  // In the Schur basis total S^2 is diagonal.
  const CMatrix s2_op = s3 * oracle::total_spin_squared(3) * s3.adjoint();
  EXPECT_LT(max_abs(s2_op - CMatrix(s2_op.diagonal().asDiagonal())), 1e-12);
}
