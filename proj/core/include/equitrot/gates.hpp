// Fixed and parametric gate matrices. Rotation conventions:
//   rx(t)  = exp(-i t/2 X)            rz(t)  = exp(-i t/2 Z)
//   rxx(t) = exp(-i t/2 XX), likewise ryy, rzz
//   xxyyzz(tau) = exp(-i tau (XX + YY + ZZ))
//   su2_block(t): identity on the triplet, phase e^{i t} on the singlet.

#pragma once

#include "equitrot/state.hpp"

namespace equitrot::gates {

CMatrix identity(int dim);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// Control is the first target, the flipped qubit the second.
CMatrix cnot();

CMatrix rx(double theta);
CMatrix rz(double theta);

CMatrix rxx(double theta);
CMatrix ryy(double theta);
CMatrix rzz(double theta);

CMatrix xxyyzz(double tau);

/// Closed form of the SU(2)-equivariant two-qubit block.
CMatrix su2_block(double theta);

/// The same block assembled from its gate decomposition
/// CNOT * CRX(theta) * P(theta/2) * CNOT.
CMatrix su2_block_decomposed(double theta);

/// Controlled-RX with the control on the second target (local bit 0).
CMatrix crx_low_control(double theta);

/// diag(1, e^{i theta/2}, 1, e^{i theta/2}): phase on the second target,
/// the control of crx_low_control.
CMatrix phase_low(double theta);

/// Kronecker product a (x) b; a acts on the more significant local bits.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace equitrot::gates
