#pragma once

#include <string>
#include <vector>

#include "equitrot/circuit.hpp"
#include "equitrot/heisenberg.hpp"

namespace equitrot {

struct TrotterScheme {
  enum class Variant { StandardFirstOrder, OptimizedFirstOrder, OptimizedSecondOrder, Suzuki };

  Variant variant = Variant::OptimizedFirstOrder;
  /// Only for Suzuki: even order >= 4.
  int suzuki_order = 0;

  static TrotterScheme standard_first_order() { return {Variant::StandardFirstOrder, 0}; }
  static TrotterScheme optimized_first_order() { return {Variant::OptimizedFirstOrder, 0}; }
  static TrotterScheme optimized_second_order() { return {Variant::OptimizedSecondOrder, 0}; }
  static TrotterScheme suzuki(int order);

  void validate() const;
  /// "standard", "optimized", "second_order", "suzuki4", ...
  std::string name() const;
  static TrotterScheme parse(const std::string& name);
};

struct SuzukiTerm {
  double scale;
  int sub_order;
};

/// p_k = 1 / (4 - 4^{1/(2k-1)})
double suzuki_p(int k);

/// One recursion level of S_{2k}: five terms (p, p, 1-4p, p, p) of order
/// 2k-2. Throws for k < 2.
std::vector<SuzukiTerm> suzuki_coefficients(int k);

/// Time scales of the second-order steps making up S_{order}(dt), in
/// application order. order = 2 gives {1}.
std::vector<double> suzuki_step_scales(int order);

/// Circuit approximating e^{-iHt} with r steps of dt = t / r. Optimized
/// variants require an isotropic field-free chain.
Circuit build_trotter_circuit(const SpinChainSpec& spec, const TrotterScheme& scheme, int r);

StateVector trotter_state(const SpinChainSpec& spec, const TrotterScheme& scheme, int r,
                          const StateVector& input);

/// Two-qubit gate cost: rxx/ryy/rzz 2, xxyyzz 3, su2_block 4, cnot 1,
/// single-qubit gates 0. Throws for fixed-matrix ops.
long cx_count(const Circuit& circuit);

}  // namespace equitrot
