// Heisenberg spin chain
//   H = sum_bonds (Jx XX + Jy YY + Jz ZZ) + sum_i (hx X_i + hz Z_i)
// with hbar = 1, its exact propagator and the total-spin operators.

#pragma once

#include <vector>

#include "equitrot/state.hpp"

namespace equitrot {

enum class Boundary { Open, Periodic };

struct SpinChainSpec {
  int n_qubits = 8;
  double jx = 1.0;
  double jy = 1.0;
  double jz = 1.0;
  double hx = 0.0;
  double hz = 0.0;
  Boundary boundary = Boundary::Open;
  double time = 1.0;

  bool isotropic() const { return jx == jy && jy == jz && hx == 0.0 && hz == 0.0; }
  /// H commutes with total S_z (block structure used by the propagator).
  bool conserves_sz() const { return jx == jy && hx == 0.0; }
  /// Throws std::invalid_argument for odd or out-of-range n, or t <= 0.
  void validate() const;
  /// Nearest-neighbour bonds: (i, i+1) ascending, then (n-1, 0) when
  /// periodic and n >= 3.
  std::vector<std::pair<int, int>> bonds() const;
};

/// Dense operators are limited to this many qubits.
inline constexpr int kMaxDenseQubits = 12;

class HermitianOperator {
 public:
  explicit HermitianOperator(CMatrix m, double tolerance = kDefaultTolerance);
  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
};

HermitianOperator build_hamiltonian(const SpinChainSpec& spec);

/// Matrix-free H|psi>.
CVector apply_hamiltonian(const SpinChainSpec& spec, const CVector& psi);

/// <psi|H|psi>
double energy(const SpinChainSpec& spec, const StateVector& state);

/// e^{-iHt} by exact diagonalization. The Hamiltonian is real symmetric in
/// the computational basis; when it conserves S_z each magnetization sector
/// is diagonalized on its own. Immutable once built.
class ExactPropagator {
 public:
  explicit ExactPropagator(const SpinChainSpec& spec);

  StateVector evolve(const StateVector& input) const;
  StateVector evolve(const StateVector& input, double time) const;

  /// All eigenvalues, ascending.
  std::vector<double> spectrum() const;
  const SpinChainSpec& spec() const { return spec_; }

 private:
  struct Sector {
    std::vector<std::size_t> indices;
    Eigen::VectorXd energies;
    Eigen::MatrixXd vectors;
  };
  SpinChainSpec spec_;
  std::vector<Sector> sectors_;
};

StateVector exact_evolve(const SpinChainSpec& spec, const StateVector& input);

/// Tensor product of (|01> - |10>)/sqrt(2) on pairs (0,1), (2,3), ...
/// The ket label lists the lower qubit first.
StateVector singlet_initial_state(int n_qubits);

/// |0101...> with qubit 0 first: odd qubits flipped.
StateVector neel_state(int n_qubits);
/// Qubits 0 .. n/2 - 1 flipped, the rest in |0>.
StateVector domain_wall_state(int n_qubits);

HermitianOperator total_spin_z(int n_qubits);
HermitianOperator total_spin_squared(int n_qubits);

double expectation(const HermitianOperator& op, const StateVector& state);

/// Matrix-free <S_z> and <S^2>, usable up to kMaxQubits.
double spin_z_expectation(const StateVector& state);
double spin_squared_expectation(const StateVector& state);

/// max |AB - BA|
double commutator_norm(const CMatrix& a, const CMatrix& b);

}  // namespace equitrot
