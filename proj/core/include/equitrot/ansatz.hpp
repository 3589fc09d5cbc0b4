// SU(2)-equivariant blocks, Schur operators and the ansatz families built
// from them.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "equitrot/circuit.hpp"

namespace equitrot {

/// Two-qubit Schur transform: rows are |00>, (|01>+|10>)/sqrt2, |11>,
/// (|01>-|10>)/sqrt2.
CMatrix schur2();

/// diag(1, 1, 1, e^{i theta}) in the Schur basis.
CMatrix singlet_phase(double theta);

/// S2 * P2(theta) * S2^dagger
CMatrix v2(double theta);

/// Three-qubit Schur transform (spin-3/2 quartet then two spin-1/2 doublets).
CMatrix schur3();

enum class Topology { LinearSU2, BrickwallSU2, GeneralLinear, GeneralBrickwall };
enum class InitialState { Singlet, AllZero };

std::string topology_name(Topology t);
Topology parse_topology(const std::string& name);
std::string initial_state_name(InitialState s);
InitialState parse_initial_state(const std::string& name);

bool is_su2(Topology t);

struct AnsatzSpec {
  int n_qubits = 8;
  int layers = 5;
  Topology topology = Topology::LinearSU2;
  InitialState initial_state = InitialState::Singlet;

  void validate() const;
  std::size_t param_count() const;
};

/// Training depth used when a config leaves it unset: 5 layers up to eight
/// qubits, 6 beyond.
int default_layers(int n_qubits);

/// Pairs of one layer in application order.
std::vector<std::pair<int, int>> layer_pairs(int n_qubits, Topology topology);

Circuit build_ansatz(const AnsatzSpec& spec);

StateVector ansatz_initial_state(const AnsatzSpec& spec);

/// Spec, circuit and input state bundled for repeated state preparation.
class Ansatz {
 public:
  explicit Ansatz(AnsatzSpec spec);

  const AnsatzSpec& spec() const { return spec_; }
  const Circuit& circuit() const { return circuit_; }
  const StateVector& input() const { return input_; }
  std::size_t param_count() const { return circuit_.param_count(); }

  StateVector prepare(std::span<const double> params) const;

 private:
  AnsatzSpec spec_;
  Circuit circuit_;
  StateVector input_;
};

StateVector prepare_state(const AnsatzSpec& spec, std::span<const double> params);

}  // namespace equitrot
