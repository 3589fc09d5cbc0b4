#include "equitrot/circuit.hpp"

#include <string>

#include "equitrot/gates.hpp"

namespace equitrot {

std::string_view gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Matrix: return "matrix";
    case GateKind::X: return "x";
    case GateKind::CNOT: return "cnot";
    case GateKind::RX: return "rx";
    case GateKind::RZ: return "rz";
    case GateKind::RXX: return "rxx";
    case GateKind::RYY: return "ryy";
    case GateKind::RZZ: return "rzz";
    case GateKind::XXYYZZ: return "xxyyzz";
    case GateKind::SU2Block: return "su2_block";
  }
  return "unknown";
}

int gate_kind_arity(GateKind kind) {
  switch (kind) {
    case GateKind::Matrix: return 0;
    case GateKind::X:
    case GateKind::RX:
    case GateKind::RZ: return 1;
    default: return 2;
  }
}

bool gate_kind_is_parametric(GateKind kind) {
  return kind != GateKind::Matrix && kind != GateKind::X && kind != GateKind::CNOT;
}

CircuitOp CircuitOp::fixed(GateMatrix m, std::vector<int> targets) {
  CircuitOp op;
  op.kind = GateKind::Matrix;
  op.targets = std::move(targets);
  op.matrix = std::move(m);
  return op;
}

CircuitOp CircuitOp::gate(GateKind kind, std::vector<int> targets, double angle) {
  CircuitOp op;
  op.kind = kind;
  op.targets = std::move(targets);
  op.angle = angle;
  return op;
}

CircuitOp CircuitOp::slot(GateKind kind, std::vector<int> targets, std::size_t param_slot) {
  CircuitOp op = gate(kind, std::move(targets));
  op.param_slot = param_slot;
  return op;
}

double CircuitOp::resolved_angle(std::span<const double> params) const {
  if (!param_slot) return angle;
  if (*param_slot >= params.size()) {
    throw std::invalid_argument("parameter slot " + std::to_string(*param_slot) +
                                " beyond parameter vector of length " +
                                std::to_string(params.size()));
  }
  return params[*param_slot];
}

Circuit::Circuit(int n_qubits, std::size_t param_count)
    : n_qubits_(n_qubits), param_count_(param_count) {
  check_qubit_count(n_qubits);
}

void Circuit::add(CircuitOp op) {
  const int arity = op.kind == GateKind::Matrix
                        ? (op.matrix ? op.matrix->n_targets() : -1)
                        : gate_kind_arity(op.kind);
  if (arity < 0) throw std::invalid_argument("matrix op without a matrix");
  if (static_cast<int>(op.targets.size()) != arity) {
    throw std::invalid_argument(std::string(gate_kind_name(op.kind)) + " expects " +
                                std::to_string(arity) + " targets");
  }
  for (std::size_t i = 0; i < op.targets.size(); ++i) {
    const int t = op.targets[i];
    if (t < 0 || t >= n_qubits_) {
      throw std::invalid_argument("target " + std::to_string(t) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (op.targets[j] == t) throw std::invalid_argument("duplicate targets");
    }
  }
  if (op.param_slot) {
    if (!gate_kind_is_parametric(op.kind)) {
      throw std::invalid_argument("parameter slot on a non-parametric gate");
    }
    if (*op.param_slot >= param_count_) {
      throw std::invalid_argument("parameter slot " + std::to_string(*op.param_slot) +
                                  " outside [0, " + std::to_string(param_count_) + ")");
    }
  }
  ops_.push_back(std::move(op));
}

CMatrix gate_matrix(const CircuitOp& op, std::span<const double> params) {
  switch (op.kind) {
    case GateKind::Matrix:
      if (!op.matrix) throw std::invalid_argument("matrix op without a matrix");
      return op.matrix->matrix();
    case GateKind::X: return gates::pauli_x();
    case GateKind::CNOT: return gates::cnot();
    case GateKind::RX: return gates::rx(op.resolved_angle(params));
    case GateKind::RZ: return gates::rz(op.resolved_angle(params));
    case GateKind::RXX: return gates::rxx(op.resolved_angle(params));
    case GateKind::RYY: return gates::ryy(op.resolved_angle(params));
    case GateKind::RZZ: return gates::rzz(op.resolved_angle(params));
    case GateKind::XXYYZZ: return gates::xxyyzz(op.resolved_angle(params));
    case GateKind::SU2Block: return gates::su2_block(op.resolved_angle(params));
  }
  throw std::invalid_argument("unknown gate kind");
}

void apply_op_inplace(StateVector& state, const CircuitOp& op, std::span<const double> params) {
  apply_gate(state, gate_matrix(op, params), op.targets);
}

StateVector apply_op(StateVector state, const CircuitOp& op, std::span<const double> params) {
  apply_op_inplace(state, op, params);
  return state;
}

StateVector run_circuit(const Circuit& circuit, StateVector input,
                        std::span<const double> params) {
  if (params.size() != circuit.param_count()) {
    throw std::invalid_argument("expected " + std::to_string(circuit.param_count()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  if (input.n_qubits() != circuit.n_qubits()) {
    throw std::invalid_argument("circuit and state qubit counts differ");
  }
  for (const auto& op : circuit.ops()) {
    apply_op_inplace(input, op, params);
  }
  return input;
}

}  // namespace equitrot
