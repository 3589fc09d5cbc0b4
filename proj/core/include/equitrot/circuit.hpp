#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "equitrot/state.hpp"

namespace equitrot {

enum class GateKind {
  Matrix,    // fixed user-supplied unitary
  X,
  CNOT,
  RX,
  RZ,
  RXX,
  RYY,
  RZZ,
  XXYYZZ,
  SU2Block,
};

std::string_view gate_kind_name(GateKind kind);

/// Number of qubits a gate template acts on (Matrix kinds report 0).
int gate_kind_arity(GateKind kind);

bool gate_kind_is_parametric(GateKind kind);

struct CircuitOp {
  GateKind kind = GateKind::Matrix;
  std::vector<int> targets;
  /// Index into the circuit parameter vector. When absent, `angle` is used.
  std::optional<std::size_t> param_slot;
  double angle = 0.0;
  /// Only for GateKind::Matrix.
  std::optional<GateMatrix> matrix;

  static CircuitOp fixed(GateMatrix m, std::vector<int> targets);
  static CircuitOp gate(GateKind kind, std::vector<int> targets, double angle = 0.0);
  static CircuitOp slot(GateKind kind, std::vector<int> targets, std::size_t param_slot);

  double resolved_angle(std::span<const double> params) const;
};

/// Ordered gate list with `param_count` free parameters.
class Circuit {
 public:
  Circuit(int n_qubits, std::size_t param_count);

  /// Validates targets and parameter slot before appending.
  void add(CircuitOp op);

  int n_qubits() const { return n_qubits_; }
  std::size_t param_count() const { return param_count_; }
  const std::vector<CircuitOp>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }

 private:
  int n_qubits_;
  std::size_t param_count_;
  std::vector<CircuitOp> ops_;
};

CMatrix gate_matrix(const CircuitOp& op, std::span<const double> params);

StateVector apply_op(StateVector state, const CircuitOp& op, std::span<const double> params);
void apply_op_inplace(StateVector& state, const CircuitOp& op, std::span<const double> params);

/// Applies the ops in list order. Throws std::invalid_argument when
/// params.size() != circuit.param_count().
StateVector run_circuit(const Circuit& circuit, StateVector input,
                        std::span<const double> params = {});

}  // namespace equitrot
