// Dense statevector engine.
//
// Qubit ordering: qubit 0 is the least-significant bit of the basis index,
// so amplitude i belongs to the basis state with bit q of i equal to the
// value of qubit q. Multi-qubit gate matrices are written with their first
// target as the most-significant local bit, i.e. a 4x4 gate on targets
// (a, b) is indexed as |q_a q_b>. Everything in the library follows this.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace equitrot {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr int kMaxQubits = 14;

/// Raised when a numerical routine produces a non-finite or otherwise
/// unusable result (diverging optimizer, failed eigensolver).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StateVector {
 public:
  /// Takes ownership of `amplitudes`; throws if the length is not 2^n or
  /// the vector is not normalized within `tolerance`.
  StateVector(int n_qubits, CVector amplitudes,
              double tolerance = kDefaultTolerance);

  /// Normalizes the given amplitudes before storing them.
  static StateVector normalized(int n_qubits, CVector amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

  const CVector& amplitudes() const { return amps_; }
  // Mutable access for in-place kernels. Callers must keep the norm.
  CVector& amplitudes() { return amps_; }

  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amps_.norm(); }
  bool is_normalized(double tolerance = kDefaultTolerance) const;

 private:
  int n_qubits_;
  CVector amps_;
};

/// Unitary of dimension 2, 4 or 8.
class GateMatrix {
 public:
  explicit GateMatrix(CMatrix m, double tolerance = kDefaultTolerance);

  int dim() const { return static_cast<int>(m_.rows()); }
  int n_targets() const;
  const CMatrix& matrix() const { return m_; }

 private:
  CMatrix m_;
};

StateVector basis_state(int n_qubits, std::uint64_t index);

/// Applies `gate` in place on the listed qubits. targets[0] is the
/// most-significant bit of the gate's local index.
void apply_gate(StateVector& state, const CMatrix& gate,
                std::span<const int> targets);

/// |<a|b>|^2, clamped to [0, 1].
double fidelity(const StateVector& a, const StateVector& b);

Complex inner_product(const StateVector& a, const StateVector& b);

/// Single-qubit reduced density matrix by partial trace over all others.
Eigen::Matrix2cd reduced_density_1q(const StateVector& state, int qubit);

/// General SU(2) element
///   [[ e^{i a} cos b,  e^{i p} sin b],
///    [-e^{-i p} sin b, e^{-i a} cos b]].
GateMatrix su2_from_angles(double alpha, double beta, double phi);

/// Haar-distributed SU(2) element: alpha, phi uniform on [0, 2pi) and beta
/// with density proportional to sin(2 beta) on [0, pi/2].
GateMatrix random_su2(Rng& rng);

/// Normalized standard complex Gaussian vector.
StateVector haar_random_state(int n_qubits, Rng& rng);

/// Checks n_qubits in [1, kMaxQubits]; throws std::invalid_argument.
void check_qubit_count(int n_qubits);

}  // namespace equitrot
