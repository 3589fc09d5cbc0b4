#include "equitrot/gates.hpp"

#include <cmath>

namespace equitrot::gates {

using namespace std::complex_literals;

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix pauli_x() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = -1i;
  m(1, 0) = 1i;
  return m;
}

CMatrix pauli_z() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix cnot() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

CMatrix rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  CMatrix m(2, 2);
  m << c, -1i * s, -1i * s, c;
  return m;
}

CMatrix rz(double theta) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = std::exp(-0.5i * theta);
  m(1, 1) = std::exp(0.5i * theta);
  return m;
}

namespace {

// exp(-i t/2 P) for a two-qubit Pauli product P with P^2 = I.
CMatrix pauli_rotation(const CMatrix& p, double theta) {
  return std::cos(theta / 2) * identity(4) - 1i * std::sin(theta / 2) * p;
}

}  // namespace

CMatrix rxx(double theta) { return pauli_rotation(kron(pauli_x(), pauli_x()), theta); }
CMatrix ryy(double theta) { return pauli_rotation(kron(pauli_y(), pauli_y()), theta); }

CMatrix rzz(double theta) {
  CMatrix m = CMatrix::Zero(4, 4);
  const Complex minus = std::exp(-0.5i * theta), plus = std::exp(0.5i * theta);
  m(0, 0) = minus;
  m(1, 1) = plus;
  m(2, 2) = plus;
  m(3, 3) = minus;
  return m;
}

CMatrix xxyyzz(double tau) {
  // XX + YY + ZZ = 2 SWAP - I: triplet eigenvalue 1, singlet -3.
  const Complex trip = std::exp(-1i * tau);
  const Complex sing = std::exp(3i * tau);
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = trip;
  m(3, 3) = trip;
  m(1, 1) = 0.5 * (trip + sing);
  m(2, 2) = 0.5 * (trip + sing);
  m(1, 2) = 0.5 * (trip - sing);
  m(2, 1) = 0.5 * (trip - sing);
  return m;
}

CMatrix su2_block(double theta) {
  const Complex ph = std::exp(0.5i * theta);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(3, 3) = 1.0;
  m(1, 1) = ph * c;
  m(2, 2) = ph * c;
  m(1, 2) = -1i * ph * s;
  m(2, 1) = -1i * ph * s;
  return m;
}

CMatrix crx_low_control(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(2, 2) = 1.0;
  m(1, 1) = c;
  m(3, 3) = c;
  m(1, 3) = -1i * s;
  m(3, 1) = -1i * s;
  return m;
}

CMatrix phase_low(double theta) {
  CMatrix m = CMatrix::Identity(4, 4);
  m(1, 1) = std::exp(0.5i * theta);
  m(3, 3) = std::exp(0.5i * theta);
  return m;
}

CMatrix su2_block_decomposed(double theta) {
  return cnot() * crx_low_control(theta) * phase_low(theta) * cnot();
}

}  // namespace equitrot::gates
