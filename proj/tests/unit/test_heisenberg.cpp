#include <gtest/gtest.h>

#include "equitrot/heisenberg.hpp"
#include "oracles.hpp"

using namespace equitrot;

namespace {

SpinChainSpec chain(int n, double jx, double jy, double jz, double hx, double hz, bool periodic,
                    double t = 1.0) {
  SpinChainSpec s;
  s.n_qubits = n;
  s.jx = jx;
  s.jy = jy;
  s.jz = jz;
  s.hx = hx;
  s.hz = hz;
  s.boundary = periodic ? Boundary::Periodic : Boundary::Open;
  s.time = t;
  return s;
}

const std::vector<SpinChainSpec> kChains{
    chain(4, 1, 1, 1, 0, 0, false),        chain(4, 1, 1, 1, 0, 0, true),
    chain(4, 0.7, 0.7, 1.3, 0, 0.4, false), chain(4, 0.5, -0.8, 1.1, 0.3, 0.2, true),
    chain(6, 1, 1, 1, 0, 0, false, 0.7),   chain(2, 1, 1, 1, 0, 0, true)};

}  // namespace

TEST(SpinChain, Validation) {
  EXPECT_THROW(chain(3, 1, 1, 1, 0, 0, false).validate(), std::invalid_argument);
  EXPECT_THROW(chain(0, 1, 1, 1, 0, 0, false).validate(), std::invalid_argument);
  EXPECT_THROW(chain(4, 1, 1, 1, 0, 0, false, 0.0).validate(), std::invalid_argument);
  EXPECT_NO_THROW(chain(8, 1, 1, 1, 0, 0, false).validate());
}

TEST(SpinChain, Bonds) {
  EXPECT_EQ(chain(4, 1, 1, 1, 0, 0, false).bonds().size(), 3u);
  const auto b = chain(4, 1, 1, 1, 0, 0, true).bonds();
  ASSERT_EQ(b.size(), 4u);
  EXPECT_EQ(b.back(), std::make_pair(3, 0));
  EXPECT_EQ(chain(2, 1, 1, 1, 0, 0, true).bonds().size(), 1u);
}

TEST(Hamiltonian, MatchesPauliStringSum) {
  for (const auto& s : kChains) {
    const auto h = build_hamiltonian(s);
    const oracle::Vec expected = oracle::heisenberg(s.n_qubits, s.jx, s.jy, s.jz, s.hx, s.hz,
                                             s.boundary == Boundary::Periodic);
    EXPECT_LT(oracle::max_abs(h.matrix() - expected), 1e-13);
  }
}

TEST(Hamiltonian, MatrixFreeApplicationAndEnergy) {
  std::mt19937_64 rng(1);
  for (const auto& s : kChains) {
    const auto dim = Eigen::Index{1} << s.n_qubits;
    const auto psi = oracle::random_vector(dim, rng);
    const oracle::Vec expected = oracle::heisenberg(s.n_qubits, s.jx, s.jy, s.jz, s.hx, s.hz,
                                             s.boundary == Boundary::Periodic) * psi;
    EXPECT_LT((apply_hamiltonian(s, psi) - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(energy(s, StateVector(s.n_qubits, psi)), psi.dot(expected).real(), 1e-12);
  }
}

TEST(ExactPropagator, MatchesMatrixExponential) {
  std::mt19937_64 rng(2);
  for (const auto& s : kChains) {
    const auto dim = Eigen::Index{1} << s.n_qubits;
    const auto psi = oracle::random_vector(dim, rng);
    const auto h = oracle::heisenberg(s.n_qubits, s.jx, s.jy, s.jz, s.hx, s.hz,
                                      s.boundary == Boundary::Periodic);
    const oracle::Vec expected = oracle::expm_i(h, s.time) * psi;
    const ExactPropagator prop(s);
    EXPECT_LT((prop.evolve(StateVector(s.n_qubits, psi)).amplitudes() - expected)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-11);
    const oracle::Vec half = oracle::expm_i(h, 0.5) * psi;
    EXPECT_LT((prop.evolve(StateVector(s.n_qubits, psi), 0.5).amplitudes() - half)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-11);
  }
}

TEST(ExactPropagator, SpectrumMatchesDenseEigenvalues) {
  const auto s = chain(4, 0.5, 0.5, 1.2, 0, 0.3, true);
  const auto h = oracle::heisenberg(4, 0.5, 0.5, 1.2, 0, 0.3, true);
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(h);
  auto spec = ExactPropagator(s).spectrum();
  ASSERT_EQ(spec.size(), 16u);
  for (std::size_t i = 0; i < spec.size(); ++i) EXPECT_NEAR(spec[i], es.eigenvalues()[i], 1e-12);
}

TEST(SpinOperators, SingletInitialState) {
  for (int n : {2, 4, 6, 8}) {
    const auto s = singlet_initial_state(n);
    EXPECT_NEAR(s.norm(), 1.0, 1e-14);
    EXPECT_NEAR(spin_squared_expectation(s), 0.0, 1e-12);
    EXPECT_NEAR(spin_z_expectation(s), 0.0, 1e-12);
  }
  const auto s2 = singlet_initial_state(2);
  EXPECT_NEAR(std::abs(s2[0b01]), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(s2[0b01] + s2[0b10]), 0.0, 1e-15);
  EXPECT_THROW(singlet_initial_state(3), std::invalid_argument);
}

TEST(SpinOperators, ProductReferenceStates) {
  EXPECT_EQ(std::abs(neel_state(4)[0b1010]), 1.0);
  EXPECT_EQ(std::abs(domain_wall_state(6)[0b000111]), 1.0);
  EXPECT_NEAR(spin_z_expectation(neel_state(6)), 0.0, 1e-15);
  EXPECT_NEAR(spin_z_expectation(domain_wall_state(6)), 0.0, 1e-15);
}

TEST(SpinOperators, TotalSpinSquaredMatchesAxisSum) {
  for (int n : {2, 3, 4}) {
    EXPECT_LT(oracle::max_abs(total_spin_squared(n).matrix() - oracle::total_spin_squared(n)), 1e-12);
  }
  std::mt19937_64 rng(3);
  for (int n : {3, 5}) {
    const auto psi = oracle::random_vector(Eigen::Index{1} << n, rng);
    const double expected = psi.dot(oracle::total_spin_squared(n) * psi).real();
    EXPECT_NEAR(spin_squared_expectation(StateVector(n, psi)), expected, 1e-12);
  }
}

TEST(SpinOperators, IsotropicHamiltonianCommutesWithTotalSpin) {
  const auto h = build_hamiltonian(chain(6, 1, 1, 1, 0, 0, true));
  EXPECT_LT(commutator_norm(h.matrix(), total_spin_squared(6).matrix()), 1e-10);
  // A uniform field is 2h S_x and still commutes; anisotropy does not.
  const auto h2 = build_hamiltonian(chain(4, 1, 1, 0.5, 0.5, 0, false));
  EXPECT_GT(commutator_norm(h2.matrix(), total_spin_squared(4).matrix()), 1e-3);
}

TEST(HermitianOperator, RejectsNonHermitian) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(HermitianOperator{m}, std::invalid_argument);
}
