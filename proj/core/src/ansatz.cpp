#include "equitrot/ansatz.hpp"

#include <cmath>

#include "equitrot/gates.hpp"
#include "equitrot/heisenberg.hpp"

namespace equitrot {

using namespace std::complex_literals;

CMatrix schur2() {
  const double h = 1.0 / std::sqrt(2.0);
  CMatrix s(4, 4);
  s << 1, 0, 0, 0,
       0, h, h, 0,
       0, 0, 0, 1,
       0, h, -h, 0;
  return s;
}

CMatrix singlet_phase(double theta) {
  CMatrix p = CMatrix::Identity(4, 4);
  p(3, 3) = std::exp(1i * theta);
  return p;
}

CMatrix v2(double theta) {
  const CMatrix s = schur2();
  // S2 maps the computational basis to the spin basis, so the block acting
  // on computational amplitudes is S2^dagger P2 S2.
  return s.adjoint() * singlet_phase(theta) * s;
}

CMatrix schur3() {
  const double a = 1.0 / std::sqrt(3.0);
  const double b = std::sqrt(2.0 / 3.0);
  const double c = 1.0 / std::sqrt(6.0);
  const double d = 1.0 / std::sqrt(2.0);
  CMatrix s(8, 8);
  s << 1, 0, 0, 0, 0, 0, 0, 0,
       0, a, a, 0, a, 0, 0, 0,
       0, 0, 0, a, 0, a, a, 0,
       0, 0, 0, 0, 0, 0, 0, 1,
       0, b, -c, 0, -c, 0, 0, 0,
       0, 0, 0, c, 0, c, -b, 0,
       0, 0, d, 0, -d, 0, 0, 0,
       0, 0, 0, -d, 0, d, 0, 0;
  return s;
}

std::string topology_name(Topology t) {
  switch (t) {
    case Topology::LinearSU2: return "linear_su2";
    case Topology::BrickwallSU2: return "brickwall_su2";
    case Topology::GeneralLinear: return "general_linear";
    case Topology::GeneralBrickwall: return "general_brickwall";
  }
  return "unknown";
}

Topology parse_topology(const std::string& name) {
  for (Topology t : {Topology::LinearSU2, Topology::BrickwallSU2, Topology::GeneralLinear,
                     Topology::GeneralBrickwall}) {
    if (topology_name(t) == name) return t;
  }
  throw std::invalid_argument("unknown ansatz topology '" + name + "'");
}

std::string initial_state_name(InitialState s) {
  return s == InitialState::Singlet ? "singlet" : "all_zero";
}

InitialState parse_initial_state(const std::string& name) {
  if (name == "singlet") return InitialState::Singlet;
  if (name == "all_zero") return InitialState::AllZero;
  throw std::invalid_argument("unknown initial state '" + name + "'");
}

bool is_su2(Topology t) { return t == Topology::LinearSU2 || t == Topology::BrickwallSU2; }

void AnsatzSpec::validate() const {
  check_qubit_count(n_qubits);
  if (n_qubits < 2) throw std::invalid_argument("ansatz needs at least 2 qubits");
  if (layers < 1) throw std::invalid_argument("ansatz needs at least one layer");
  if (initial_state == InitialState::Singlet && n_qubits % 2 != 0) {
    throw std::invalid_argument("singlet input needs an even qubit count");
  }
}

std::size_t AnsatzSpec::param_count() const {
  const auto l = static_cast<std::size_t>(layers);
  const auto n = static_cast<std::size_t>(n_qubits);
  return is_su2(topology) ? l * (n - 1) : l * 2 * n;
}

int default_layers(int n_qubits) { return n_qubits <= 8 ? 5 : 6; }

std::vector<std::pair<int, int>> layer_pairs(int n_qubits, Topology topology) {
  std::vector<std::pair<int, int>> pairs;
  if (topology == Topology::LinearSU2 || topology == Topology::GeneralLinear) {
    for (int i = 0; i + 1 < n_qubits; ++i) pairs.emplace_back(i, i + 1);
  } else {
    for (int i = 0; i + 1 < n_qubits; i += 2) pairs.emplace_back(i, i + 1);
    for (int i = 1; i + 1 < n_qubits; i += 2) pairs.emplace_back(i, i + 1);
  }
  return pairs;
}

Circuit build_ansatz(const AnsatzSpec& spec) {
  spec.validate();
  Circuit c(spec.n_qubits, spec.param_count());
  const auto pairs = layer_pairs(spec.n_qubits, spec.topology);
  std::size_t slot = 0;
  for (int layer = 0; layer < spec.layers; ++layer) {
    if (is_su2(spec.topology)) {
      for (const auto& [a, b] : pairs) c.add(CircuitOp::slot(GateKind::SU2Block, {a, b}, slot++));
    } else {
      for (int q = 0; q < spec.n_qubits; ++q) {
        c.add(CircuitOp::slot(GateKind::RX, {q}, slot++));
        c.add(CircuitOp::slot(GateKind::RZ, {q}, slot++));
      }
      for (const auto& [a, b] : pairs) c.add(CircuitOp::gate(GateKind::CNOT, {a, b}));
    }
  }
  return c;
}

StateVector ansatz_initial_state(const AnsatzSpec& spec) {
  spec.validate();
  return spec.initial_state == InitialState::Singlet ? singlet_initial_state(spec.n_qubits)
                                                     : basis_state(spec.n_qubits, 0);
}

Ansatz::Ansatz(AnsatzSpec spec)
    : spec_(spec), circuit_(build_ansatz(spec)), input_(ansatz_initial_state(spec)) {}

StateVector Ansatz::prepare(std::span<const double> params) const {
  return run_circuit(circuit_, input_, params);
}

StateVector prepare_state(const AnsatzSpec& spec, std::span<const double> params) {
  return Ansatz(spec).prepare(params);
}

}  // namespace equitrot
