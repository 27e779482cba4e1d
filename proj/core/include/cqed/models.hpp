#pragma once

#include "cqed/hilbert.hpp"

namespace cqed {

/// Physical parameters of the n-atom dispersive cavity model. The effective
/// coupling lambda = g^2/delta is derived, never stored.
struct ModelParams {
  int n;
  double g;
  double delta;
  int fock_cutoff;

  ModelParams(int n, double g, double delta);
  ModelParams(int n, double g, double delta, int fock_cutoff);

  double lambda() const { return g * g / delta; }
  double ratio() const { return delta / g; }

  BasisDescriptor cavity_basis() const { return BasisDescriptor(n, fock_cutoff); }
  BasisDescriptor atom_basis() const { return BasisDescriptor(n); }
};

/// Interaction-picture coupling Hamiltonian at time t:
///   H(t) = g sum_j (e^{-i delta t} a^dag s_j^- + e^{+i delta t} a s_j^+),
/// on atoms (x) truncated cavity.
Operator full_hamiltonian_at(const ModelParams& params, double t);

/// Time-independent generator in the frame rotating with the cavity:
///   H_f = g sum_j (a^dag s_j^- + a s_j^+) - delta a^dag a.
/// Evolution under H_f conjugated by exp(-i delta t a^dag a) reproduces the
/// time-ordered evolution generated by full_hamiltonian_at.
Operator static_frame_hamiltonian(const ModelParams& params);

/// Second-order effective Hamiltonian after adiabatic elimination:
///   H = lambda sum_{i,j} (s_j^+ s_i^- a a^dag - s_j^- s_i^+ a^dag a),
/// with the i = j terms carrying the Stark shifts. Operator products use the
/// truncated a, a^dag.
Operator effective_hamiltonian(const ModelParams& params);

/// Effective Hamiltonian restricted to the zero-photon cavity sector, as an
/// atoms-only operator: lambda (sum_j |1><1|_j + sum_{i != j} s_j^+ s_i^-).
Operator vacuum_sector_hamiltonian(const ModelParams& params);

/// Same generator parameterized directly by lambda; convenient when time is
/// swept as the dimensionless product lambda*t.
Operator vacuum_sector_hamiltonian(int n, double lambda);

}  // namespace cqed
