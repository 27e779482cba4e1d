#pragma once

#include "cqed/models.hpp"

namespace cqed {

/// Cached spectral decomposition of a Hermitian generator; applies
/// psi(t) = V exp(-i E t) V^dag psi(0) for arbitrary real t.
class Propagator {
 public:
  explicit Propagator(const Operator& hamiltonian);

  const BasisDescriptor& basis() const { return basis_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }

  StateVector evolve(const StateVector& psi0, double t) const;

 private:
  BasisDescriptor basis_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
};

StateVector evolve(const Propagator& propagator, const StateVector& psi0, double t);

/// Time-ordered evolution under the oscillating coupling Hamiltonian, via a
/// 4th-order commutator-free Magnus stepper (two exponentials per step,
/// Gauss-Legendre samples). The step size is min(dt_max, 0.05/|H|, 0.05/delta).
StateVector evolve_timedep(const ModelParams& params, const StateVector& psi0, double t,
                           double dt_max);

/// Exact route for the same dynamics: spectral evolution under the static
/// frame generator followed by the frame phases exp(-i delta t a^dag a).
StateVector evolve_via_static_frame(const ModelParams& params, const StateVector& psi0, double t);

/// W-class evolution from |0...01> under the vacuum-sector generator, in
/// closed form at dimensionless time lambda_t:
///   survivor amplitude (z + n - 1)/n, transfer amplitudes (z - 1)/n,
///   z = exp(-i n lambda_t). Requires n >= 2.
StateVector analytic_w_evolution(int n, double lambda_t);

/// Frequency convention for the middle term of the four-atom two-excitation
/// evolution: `corrected` uses the spectral value 2*lambda, `printed` keeps
/// the 3*lambda variant found in circulation.
enum class Ghz4Frequency { corrected, printed };

/// Four-atom evolution from |0011> restricted to the two-excitation sector:
///   amp(0011) = (u + 3v + 2)/6, amp(1100) = (u - 3v + 2)/6,
///   cross terms (u - 1)/6, with u = exp(-i 6 lambda_t),
///   v = exp(-i omega lambda_t), omega per the frequency mode.
StateVector analytic_ghz4_evolution(double lambda_t, Ghz4Frequency mode = Ghz4Frequency::corrected);

struct MeasurementRecord {
  int atom_index;
  int outcome;
  double probability;
  StateVector post_state;  // atom factored out, renormalized
};

/// Projective measurement of one atom in its energy basis, keeping a stated
/// outcome. Throws zero_probability_error when the branch weight is below
/// 1e-12. The measured atom is removed from the post state.
MeasurementRecord measure_atom(const StateVector& psi, int atom_index, int outcome);

/// Success probability of projecting atom n-1 of the W-class state at
/// lambda_t onto |0>: (n-1)/n^2 * (2 - 2 cos(n lambda_t)). Requires n >= 3.
double distillation_probability(int n, double lambda_t);

}  // namespace cqed
