#pragma once

#include "cqed/hilbert.hpp"

namespace cqed {

enum class TargetLabel { w, ghz, bell_phi_plus, bell_phi_minus, bell_psi_plus, bell_psi_minus, custom };

/// A reference state against which fidelities are reported.
struct TargetState {
  TargetLabel label;
  StateVector state;

  static TargetState custom(StateVector psi) { return TargetState{TargetLabel::custom, std::move(psi)}; }

  /// True when the amplitudes still match the label's pattern (magnitudes
  /// only; phases are free). Custom targets are always consistent.
  bool consistent(double tol = 1e-9) const;
};

/// Canonical target construction: W_n (n >= 2), GHZ_n (n >= 2), or one of the
/// four Bell states (n must be 2). Other combinations are rejected.
TargetState make_target(TargetLabel label, int n);

/// Wootters concurrence of a two-qubit density matrix, via the Hermitian form
/// R = sqrt(rho) (sy x sy) conj(rho) (sy x sy) sqrt(rho). Rejects matrices
/// with eigenvalues below -1e-10.
double concurrence(const DensityMatrix& rho);

/// |<target|psi>|^2.
double fidelity_to(const StateVector& psi, const TargetState& target);

}  // namespace cqed
