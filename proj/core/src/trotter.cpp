#include "equitrot/trotter.hpp"

#include <cmath>

namespace equitrot {

TrotterScheme TrotterScheme::suzuki(int order) {
  TrotterScheme s{Variant::Suzuki, order};
  s.validate();
  return s;
}

void TrotterScheme::validate() const {
  if (variant == Variant::Suzuki && (suzuki_order < 4 || suzuki_order % 2 != 0)) {
    throw std::invalid_argument("Suzuki order must be even and >= 4, got " +
                                std::to_string(suzuki_order));
  }
}

std::string TrotterScheme::name() const {
  switch (variant) {
    case Variant::StandardFirstOrder: return "standard";
    case Variant::OptimizedFirstOrder: return "optimized";
    case Variant::OptimizedSecondOrder: return "second_order";
    case Variant::Suzuki: return "suzuki" + std::to_string(suzuki_order);
  }
  return "unknown";
}

TrotterScheme TrotterScheme::parse(const std::string& name) {
  if (name == "standard") return standard_first_order();
  if (name == "optimized") return optimized_first_order();
  if (name == "second_order") return optimized_second_order();
  if (name.rfind("suzuki", 0) == 0 && name.size() > 6) {
    std::size_t used = 0;
    const int order = std::stoi(name.substr(6), &used);
    if (used == name.size() - 6) return suzuki(order);
  }
  throw std::invalid_argument("unknown Trotter scheme '" + name + "'");
}

double suzuki_p(int k) {
  return 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * k - 1.0)));
}

std::vector<SuzukiTerm> suzuki_coefficients(int k) {
  if (k < 2) throw std::invalid_argument("Suzuki recursion level must be >= 2");
  const double p = suzuki_p(k);
  const int sub = 2 * k - 2;
  return {{p, sub}, {p, sub}, {1.0 - 4.0 * p, sub}, {p, sub}, {p, sub}};
}

std::vector<double> suzuki_step_scales(int order) {
  if (order == 2) return {1.0};
  if (order < 2 || order % 2 != 0) throw std::invalid_argument("Suzuki order must be even");
  std::vector<double> out;
  for (const auto& term : suzuki_coefficients(order / 2)) {
    for (double s : suzuki_step_scales(term.sub_order)) out.push_back(term.scale * s);
  }
  return out;
}

namespace {

void require_isotropic(const SpinChainSpec& spec) {
  if (!spec.isotropic()) {
    throw std::invalid_argument(
        "optimized Trotter schemes need an isotropic chain without fields");
  }
}

void add_standard_step(Circuit& c, const SpinChainSpec& spec, double dt) {
  const auto bonds = spec.bonds();
  const std::pair<GateKind, double> axes[] = {
      {GateKind::RXX, spec.jx}, {GateKind::RYY, spec.jy}, {GateKind::RZZ, spec.jz}};
  for (const auto& [kind, j] : axes) {
    if (j == 0.0) continue;
    for (const auto& [a, b] : bonds) c.add(CircuitOp::gate(kind, {a, b}, 2.0 * j * dt));
  }
  if (spec.hz != 0.0) {
    for (int q = 0; q < spec.n_qubits; ++q) c.add(CircuitOp::gate(GateKind::RZ, {q}, 2.0 * spec.hz * dt));
  }
  if (spec.hx != 0.0) {
    for (int q = 0; q < spec.n_qubits; ++q) c.add(CircuitOp::gate(GateKind::RX, {q}, 2.0 * spec.hx * dt));
  }
}

void add_optimized_step(Circuit& c, const SpinChainSpec& spec, double dt) {
  for (const auto& [a, b] : spec.bonds()) {
    c.add(CircuitOp::gate(GateKind::XXYYZZ, {a, b}, spec.jx * dt));
  }
}

// Forward half step then reverse half step; the shared middle bond is merged.
void add_symmetric_step(Circuit& c, const SpinChainSpec& spec, double dt) {
  const auto bonds = spec.bonds();
  const double half = 0.5 * spec.jx * dt;
  for (std::size_t i = 0; i + 1 < bonds.size(); ++i) {
    c.add(CircuitOp::gate(GateKind::XXYYZZ, {bonds[i].first, bonds[i].second}, half));
  }
  c.add(CircuitOp::gate(GateKind::XXYYZZ, {bonds.back().first, bonds.back().second}, 2.0 * half));
  for (std::size_t i = bonds.size() - 1; i-- > 0;) {
    c.add(CircuitOp::gate(GateKind::XXYYZZ, {bonds[i].first, bonds[i].second}, half));
  }
}

}  // namespace

Circuit build_trotter_circuit(const SpinChainSpec& spec, const TrotterScheme& scheme, int r) {
  spec.validate();
  scheme.validate();
  if (r < 1) throw std::invalid_argument("Trotter step count must be >= 1");
  const double dt = spec.time / r;
  Circuit c(spec.n_qubits, 0);
  using V = TrotterScheme::Variant;
  if (scheme.variant != V::StandardFirstOrder) require_isotropic(spec);
  for (int step = 0; step < r; ++step) {
    switch (scheme.variant) {
      case V::StandardFirstOrder: add_standard_step(c, spec, dt); break;
      case V::OptimizedFirstOrder: add_optimized_step(c, spec, dt); break;
      case V::OptimizedSecondOrder: add_symmetric_step(c, spec, dt); break;
      case V::Suzuki:
        for (double s : suzuki_step_scales(scheme.suzuki_order)) add_symmetric_step(c, spec, s * dt);
        break;
    }
  }
  return c;
}

StateVector trotter_state(const SpinChainSpec& spec, const TrotterScheme& scheme, int r,
                          const StateVector& input) {
  return run_circuit(build_trotter_circuit(spec, scheme, r), input);
}

long cx_count(const Circuit& circuit) {
  long total = 0;
  for (const auto& op : circuit.ops()) {
    switch (op.kind) {
      case GateKind::X:
      case GateKind::RX:
      case GateKind::RZ: break;
      case GateKind::CNOT: total += 1; break;
      case GateKind::RXX:
      case GateKind::RYY:
      case GateKind::RZZ: total += 2; break;
      case GateKind::XXYYZZ: total += 3; break;
      case GateKind::SU2Block: total += 4; break;
      case GateKind::Matrix:
        throw std::invalid_argument("no CX cost known for a fixed-matrix gate");
    }
  }
  return total;
}

}  // namespace equitrot
