#include "equitrot/state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace equitrot {

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n_qubits) +
                                " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
}

StateVector::StateVector(int n_qubits, CVector amplitudes, double tolerance)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  check_qubit_count(n_qubits);
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
    throw std::invalid_argument("amplitude count " + std::to_string(amps_.size()) +
                                " does not match 2^" + std::to_string(n_qubits));
  }
  if (!is_normalized(tolerance)) {
    throw std::invalid_argument("state is not normalized (norm " +
                                std::to_string(amps_.norm()) + ")");
  }
}

StateVector StateVector::normalized(int n_qubits, CVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= n;
  return StateVector(n_qubits, std::move(amplitudes));
}

bool StateVector::is_normalized(double tolerance) const {
  return std::abs(amps_.squaredNorm() - 1.0) <= tolerance;
}

GateMatrix::GateMatrix(CMatrix m, double tolerance) : m_(std::move(m)) {
  const auto d = m_.rows();
  if (m_.cols() != d || (d != 2 && d != 4 && d != 8)) {
    throw std::invalid_argument("gate matrix must be 2x2, 4x4 or 8x8");
  }
  const CMatrix defect = m_.adjoint() * m_ - CMatrix::Identity(d, d);
  if (defect.cwiseAbs().maxCoeff() >= tolerance) {
    throw std::invalid_argument("gate matrix is not unitary");
  }
}

int GateMatrix::n_targets() const {
  switch (dim()) {
    case 2: return 1;
    case 4: return 2;
    default: return 3;
  }
}

StateVector basis_state(int n_qubits, std::uint64_t index) {
  check_qubit_count(n_qubits);
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (index >= dim) {
    throw std::out_of_range("basis index " + std::to_string(index) +
                            " out of range for " + std::to_string(n_qubits) + " qubits");
  }
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(dim));
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

namespace {

void check_targets(int n_qubits, std::span<const int> targets) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= n_qubits) {
      throw std::invalid_argument("target qubit " + std::to_string(targets[i]) +
                                  " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("duplicate target qubit " +
                                    std::to_string(targets[i]));
      }
    }
  }
}

// Spreads the bits of `base` over the positions not occupied by the sorted
// target qubits.
inline std::size_t insert_zero_bits(std::size_t base, std::span<const int> sorted) {
  for (int q : sorted) {
    const std::size_t low = base & ((std::size_t{1} << q) - 1);
    base = ((base >> q) << (q + 1)) | low;
  }
  return base;
}

void apply_1q(CVector& a, const CMatrix& g, int q) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t dim = static_cast<std::size_t>(a.size());
  const Complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
  for (std::size_t hi = 0; hi < dim; hi += 2 * stride) {
    for (std::size_t lo = 0; lo < stride; ++lo) {
      const auto i0 = static_cast<Eigen::Index>(hi + lo);
      const auto i1 = static_cast<Eigen::Index>(hi + lo + stride);
      const Complex x0 = a[i0], x1 = a[i1];
      a[i0] = g00 * x0 + g01 * x1;
      a[i1] = g10 * x0 + g11 * x1;
    }
  }
}

void apply_2q(CVector& a, const CMatrix& g, int q_hi_local, int q_lo_local) {
  // q_hi_local is targets[0] (local bit 1), q_lo_local is targets[1].
  const std::size_t m_hi = std::size_t{1} << q_hi_local;
  const std::size_t m_lo = std::size_t{1} << q_lo_local;
  const std::array<int, 2> sorted{std::min(q_hi_local, q_lo_local),
                                  std::max(q_hi_local, q_lo_local)};
  const std::size_t count = static_cast<std::size_t>(a.size()) >> 2;
  Complex m[4][4];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m[r][c] = g(r, c);
  }
  for (std::size_t base = 0; base < count; ++base) {
    const std::size_t i0 = insert_zero_bits(base, sorted);
    const std::array<Eigen::Index, 4> idx{
        static_cast<Eigen::Index>(i0), static_cast<Eigen::Index>(i0 | m_lo),
        static_cast<Eigen::Index>(i0 | m_hi), static_cast<Eigen::Index>(i0 | m_hi | m_lo)};
    const Complex x0 = a[idx[0]], x1 = a[idx[1]], x2 = a[idx[2]], x3 = a[idx[3]];
    for (int r = 0; r < 4; ++r) {
      a[idx[r]] = m[r][0] * x0 + m[r][1] * x1 + m[r][2] * x2 + m[r][3] * x3;
    }
  }
}

void apply_kq(CVector& a, const CMatrix& g, std::span<const int> targets) {
  const int k = static_cast<int>(targets.size());
  const std::size_t local_dim = std::size_t{1} << k;
  std::vector<int> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> offsets(local_dim, 0);
  for (std::size_t l = 0; l < local_dim; ++l) {
    for (int j = 0; j < k; ++j) {
      if ((l >> (k - 1 - j)) & 1U) offsets[l] |= std::size_t{1} << targets[static_cast<std::size_t>(j)];
    }
  }
  const std::size_t count = static_cast<std::size_t>(a.size()) >> k;
  CVector in(static_cast<Eigen::Index>(local_dim));
  for (std::size_t base = 0; base < count; ++base) {
    const std::size_t i0 = insert_zero_bits(base, sorted);
    for (std::size_t l = 0; l < local_dim; ++l) {
      in[static_cast<Eigen::Index>(l)] = a[static_cast<Eigen::Index>(i0 | offsets[l])];
    }
    const CVector out = g * in;
    for (std::size_t l = 0; l < local_dim; ++l) {
      a[static_cast<Eigen::Index>(i0 | offsets[l])] = out[static_cast<Eigen::Index>(l)];
    }
  }
}

}  // namespace

void apply_gate(StateVector& state, const CMatrix& gate, std::span<const int> targets) {
  const auto k = targets.size();
  if (k == 0 || gate.rows() != (Eigen::Index{1} << k) || gate.cols() != gate.rows()) {
    throw std::invalid_argument("gate dimension does not match target count");
  }
  check_targets(state.n_qubits(), targets);
  CVector& a = state.amplitudes();
  if (k == 1) {
    apply_1q(a, gate, targets[0]);
  } else if (k == 2) {
    apply_2q(a, gate, targets[0], targets[1]);
  } else {
    apply_kq(a, gate, targets);
  }
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("state dimension mismatch");
  }
  return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

Eigen::Matrix2cd reduced_density_1q(const StateVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.n_qubits()) {
    throw std::out_of_range("qubit " + std::to_string(qubit) + " out of range");
  }
  const CVector& a = state.amplitudes();
  const std::size_t mask = std::size_t{1} << qubit;
  const std::array<int, 1> sorted{qubit};
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  const std::size_t count = state.dim() >> 1;
  for (std::size_t base = 0; base < count; ++base) {
    const std::size_t i0 = insert_zero_bits(base, sorted);
    const Complex x0 = a[static_cast<Eigen::Index>(i0)];
    const Complex x1 = a[static_cast<Eigen::Index>(i0 | mask)];
    rho(0, 0) += std::norm(x0);
    rho(1, 1) += std::norm(x1);
    rho(0, 1) += x0 * std::conj(x1);
  }
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

GateMatrix su2_from_angles(double alpha, double beta, double phi) {
  using namespace std::complex_literals;
  CMatrix v(2, 2);
  v(0, 0) = std::exp(1i * alpha) * std::cos(beta);
  v(0, 1) = std::exp(1i * phi) * std::sin(beta);
  v(1, 0) = -std::exp(-1i * phi) * std::sin(beta);
  v(1, 1) = std::exp(-1i * alpha) * std::cos(beta);
  return GateMatrix(std::move(v), 1e-12);
}

GateMatrix random_su2(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2.0 * std::numbers::pi;
  const double alpha = two_pi * unit(rng);
  const double beta = 0.5 * std::acos(1.0 - 2.0 * unit(rng));
  const double phi = two_pi * unit(rng);
  return su2_from_angles(alpha, beta, phi);
}

StateVector haar_random_state(int n_qubits, Rng& rng) {
  check_qubit_count(n_qubits);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector amps(Eigen::Index{1} << n_qubits);
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    amps[i] = Complex(re, im);
  }
  return StateVector::normalized(n_qubits, std::move(amps));
}

}  // namespace equitrot
