#include "equitrot/heisenberg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

namespace equitrot {

using namespace std::complex_literals;

void SpinChainSpec::validate() const {
  check_qubit_count(n_qubits);
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw std::invalid_argument("spin chain needs an even qubit count >= 2, got " +
                                std::to_string(n_qubits));
  }
  if (!(time > 0.0) || !std::isfinite(time)) {
    throw std::invalid_argument("evolution time must be positive");
  }
  for (double v : {jx, jy, jz, hx, hz}) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite coupling or field");
  }
}

std::vector<std::pair<int, int>> SpinChainSpec::bonds() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i + 1 < n_qubits; ++i) out.emplace_back(i, i + 1);
  if (boundary == Boundary::Periodic && n_qubits >= 3) out.emplace_back(n_qubits - 1, 0);
  return out;
}

namespace {

// Calls emit(target_index, coefficient) for every nonzero H[target, b].
template <typename Emit>
void hamiltonian_column(const SpinChainSpec& spec,
                        const std::vector<std::pair<int, int>>& bonds,
                        std::size_t b, Emit&& emit) {
  double diag = 0.0;
  for (const auto& [i, j] : bonds) {
    const bool equal = ((b >> i) & 1U) == ((b >> j) & 1U);
    diag += spec.jz * (equal ? 1.0 : -1.0);
    const double flip = spec.jx + spec.jy * (equal ? -1.0 : 1.0);
    if (flip != 0.0) emit(b ^ ((std::size_t{1} << i) | (std::size_t{1} << j)), flip);
  }
  for (int q = 0; q < spec.n_qubits; ++q) {
    const bool one = (b >> q) & 1U;
    diag += spec.hz * (one ? -1.0 : 1.0);
    if (spec.hx != 0.0) emit(b ^ (std::size_t{1} << q), spec.hx);
  }
  if (diag != 0.0) emit(b, diag);
}

void check_dense(int n_qubits) {
  if (n_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("dense operator dimension too large for " +
                                std::to_string(n_qubits) + " qubits");
  }
}

}  // namespace

HermitianOperator::HermitianOperator(CMatrix m, double tolerance) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("operator must be square");
  if (m_.size() > 0 && (m_ - m_.adjoint()).cwiseAbs().maxCoeff() >= tolerance) {
    throw std::invalid_argument("operator is not Hermitian");
  }
}

HermitianOperator build_hamiltonian(const SpinChainSpec& spec) {
  spec.validate();
  check_dense(spec.n_qubits);
  const std::size_t dim = std::size_t{1} << spec.n_qubits;
  const auto bonds = spec.bonds();
  CMatrix h = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    hamiltonian_column(spec, bonds, b, [&](std::size_t t, double v) {
      h(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(b)) += v;
    });
  }
  return HermitianOperator(std::move(h));
}

CVector apply_hamiltonian(const SpinChainSpec& spec, const CVector& psi) {
  const std::size_t dim = std::size_t{1} << spec.n_qubits;
  if (static_cast<std::size_t>(psi.size()) != dim) {
    throw std::invalid_argument("state dimension does not match chain");
  }
  const auto bonds = spec.bonds();
  CVector out = CVector::Zero(psi.size());
  for (std::size_t b = 0; b < dim; ++b) {
    const Complex amp = psi[static_cast<Eigen::Index>(b)];
    if (amp == 0.0) continue;
    hamiltonian_column(spec, bonds, b, [&](std::size_t t, double v) {
      out[static_cast<Eigen::Index>(t)] += v * amp;
    });
  }
  return out;
}

double energy(const SpinChainSpec& spec, const StateVector& state) {
  return state.amplitudes().dot(apply_hamiltonian(spec, state.amplitudes())).real();
}

ExactPropagator::ExactPropagator(const SpinChainSpec& spec) : spec_(spec) {
  spec_.validate();
  const int n = spec_.n_qubits;
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::vector<std::size_t>> groups;
  if (spec_.conserves_sz()) {
    groups.resize(static_cast<std::size_t>(n) + 1);
    for (std::size_t b = 0; b < dim; ++b) {
      groups[static_cast<std::size_t>(std::popcount(b))].push_back(b);
    }
  } else {
    check_dense(n);
    groups.emplace_back(dim);
    for (std::size_t b = 0; b < dim; ++b) groups[0][b] = b;
  }

  const auto bonds = spec_.bonds();
  std::vector<std::size_t> position(dim);
  for (auto& idx : groups) {
    for (std::size_t k = 0; k < idx.size(); ++k) position[idx[k]] = k;
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      hamiltonian_column(spec_, bonds, idx[k], [&](std::size_t t, double v) {
        h(static_cast<Eigen::Index>(position[t]), static_cast<Eigen::Index>(k)) += v;
      });
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("Hamiltonian diagonalization failed");
    }
    sectors_.push_back(Sector{std::move(idx), solver.eigenvalues(), solver.eigenvectors()});
  }
}

StateVector ExactPropagator::evolve(const StateVector& input) const {
  return evolve(input, spec_.time);
}

StateVector ExactPropagator::evolve(const StateVector& input, double time) const {
  if (input.n_qubits() != spec_.n_qubits) {
    throw std::invalid_argument("state and chain qubit counts differ");
  }
  const CVector& in = input.amplitudes();
  CVector out = CVector::Zero(in.size());
  for (const auto& s : sectors_) {
    const auto m = static_cast<Eigen::Index>(s.indices.size());
    CVector local(m);
    for (Eigen::Index k = 0; k < m; ++k) local[k] = in[static_cast<Eigen::Index>(s.indices[static_cast<std::size_t>(k)])];
    if (local.squaredNorm() == 0.0) continue;
    CVector coeff = s.vectors.transpose().cast<Complex>() * local;
    for (Eigen::Index k = 0; k < m; ++k) coeff[k] *= std::exp(-1i * s.energies[k] * time);
    const CVector back = s.vectors.cast<Complex>() * coeff;
    for (Eigen::Index k = 0; k < m; ++k) out[static_cast<Eigen::Index>(s.indices[static_cast<std::size_t>(k)])] = back[k];
  }
  return StateVector(input.n_qubits(), std::move(out), 1e-9);
}

std::vector<double> ExactPropagator::spectrum() const {
  std::vector<double> e;
  for (const auto& s : sectors_) {
    e.insert(e.end(), s.energies.data(), s.energies.data() + s.energies.size());
  }
  std::sort(e.begin(), e.end());
  return e;
}

StateVector exact_evolve(const SpinChainSpec& spec, const StateVector& input) {
  return ExactPropagator(spec).evolve(input);
}

StateVector singlet_initial_state(int n_qubits) {
  check_qubit_count(n_qubits);
  if (n_qubits % 2 != 0) {
    throw std::invalid_argument("singlet product state needs an even qubit count");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  const double amp = std::pow(0.5, n_qubits / 4.0);
  CVector a = CVector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    double sign = 1.0;
    bool valid = true;
    for (int p = 0; p < n_qubits; p += 2) {
      const unsigned lo = (b >> p) & 1U;
      const unsigned hi = (b >> (p + 1)) & 1U;
      if (lo == hi) {
        valid = false;
        break;
      }
      // |01> (lower qubit 0) carries +, |10> carries -.
      if (lo == 1U) sign = -sign;
    }
    if (valid) a[static_cast<Eigen::Index>(b)] = sign * amp;
  }
  return StateVector(n_qubits, std::move(a));
}

StateVector neel_state(int n_qubits) {
  check_qubit_count(n_qubits);
  std::uint64_t idx = 0;
  for (int q = 1; q < n_qubits; q += 2) idx |= std::uint64_t{1} << q;
  return basis_state(n_qubits, idx);
}

StateVector domain_wall_state(int n_qubits) {
  check_qubit_count(n_qubits);
  return basis_state(n_qubits, (std::uint64_t{1} << (n_qubits / 2)) - 1);
}

HermitianOperator total_spin_z(int n_qubits) {
  check_qubit_count(n_qubits);
  check_dense(n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const int ones = std::popcount(b);
    m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = 0.5 * (n_qubits - 2 * ones);
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator total_spin_squared(int n_qubits) {
  check_qubit_count(n_qubits);
  check_dense(n_qubits);
  // S^2 = 3n/4 + sum_{i<j} (SWAP_ij - 1/2)
  const std::size_t dim = std::size_t{1} << n_qubits;
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix m = CMatrix::Zero(d, d);
  const double pairs = n_qubits * (n_qubits - 1) / 2.0;
  for (std::size_t b = 0; b < dim; ++b) {
    m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) += 0.75 * n_qubits - 0.5 * pairs;
    for (int i = 0; i < n_qubits; ++i) {
      for (int j = i + 1; j < n_qubits; ++j) {
        std::size_t s = b;
        if (((b >> i) & 1U) != ((b >> j) & 1U)) s ^= (std::size_t{1} << i) | (std::size_t{1} << j);
        m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(b)) += 1.0;
      }
    }
  }
  return HermitianOperator(std::move(m));
}

double expectation(const HermitianOperator& op, const StateVector& state) {
  if (op.dim() != static_cast<Eigen::Index>(state.dim())) {
    throw std::invalid_argument("operator and state dimensions differ");
  }
  return state.amplitudes().dot(op.matrix() * state.amplitudes()).real();
}

double spin_z_expectation(const StateVector& state) {
  const CVector& a = state.amplitudes();
  double acc = 0.0;
  for (std::size_t b = 0; b < state.dim(); ++b) {
    const int ones = std::popcount(b);
    acc += std::norm(a[static_cast<Eigen::Index>(b)]) * 0.5 * (state.n_qubits() - 2 * ones);
  }
  return acc;
}

double spin_squared_expectation(const StateVector& state) {
  const int n = state.n_qubits();
  const CVector& a = state.amplitudes();
  double acc = 0.75 * n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::size_t mask = (std::size_t{1} << i) | (std::size_t{1} << j);
      Complex swap = 0.0;
      for (std::size_t b = 0; b < state.dim(); ++b) {
        std::size_t s = b;
        if (((b >> i) & 1U) != ((b >> j) & 1U)) s ^= mask;
        swap += std::conj(a[static_cast<Eigen::Index>(b)]) * a[static_cast<Eigen::Index>(s)];
      }
      acc += swap.real() - 0.5;
    }
  }
  return acc;
}

double commutator_norm(const CMatrix& a, const CMatrix& b) {
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

}  // namespace equitrot
