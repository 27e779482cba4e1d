#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cqed {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thrown when a projective measurement selects a branch of (numerically) zero
/// probability, where no post-measurement state exists.
class zero_probability_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Labels a tensor-product space of n two-level atoms, optionally followed by
/// a single cavity mode truncated at a Fock cutoff.
///
/// Composite index convention: atom 0 is the most significant digit and the
/// cavity index varies fastest,
///   index = atom_bits * (fock_cutoff + 1) + photons
/// (atoms-only: index = atom_bits). In atom_bits, atom j contributes
/// bit (n - 1 - j), so the leftmost character of a bitstring is atom 0.
class BasisDescriptor {
 public:
  explicit BasisDescriptor(int atom_count);
  BasisDescriptor(int atom_count, int fock_cutoff);

  int atom_count() const { return atom_count_; }
  bool has_cavity() const { return fock_cutoff_ >= 0; }
  int fock_cutoff() const;

  /// Number of tensor factors: atom_count, plus one if there is a cavity.
  /// The cavity, when present, is subsystem index atom_count.
  int subsystem_count() const { return atom_count_ + (has_cavity() ? 1 : 0); }

  Eigen::Index dimension() const;
  Eigen::Index cavity_dimension() const { return has_cavity() ? fock_cutoff_ + 1 : 1; }

  Eigen::Index index_of(std::uint32_t atom_bits, int photons = 0) const;
  std::uint32_t atom_bits_at(Eigen::Index index) const;
  int photons_at(Eigen::Index index) const;

  /// Value (0 or 1) of atom `atom` within packed atom_bits.
  int bit_of(std::uint32_t atom_bits, int atom) const;

  std::uint32_t bits_from_string(std::string_view bitstring) const;

  friend bool operator==(const BasisDescriptor&, const BasisDescriptor&) = default;

 private:
  int atom_count_;
  int fock_cutoff_;  // negative: no cavity factor
};

/// Normalized pure state over a BasisDescriptor. The constructor rejects
/// amplitude vectors whose norm deviates from 1 by more than 1e-10; use
/// normalized() to rescale explicitly.
class StateVector {
 public:
  StateVector(BasisDescriptor basis, ComplexVector amplitudes);

  static StateVector normalized(BasisDescriptor basis, ComplexVector amplitudes);

  const BasisDescriptor& basis() const { return basis_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }

  Complex amplitude(std::uint32_t atom_bits, int photons = 0) const;
  double norm() const { return amplitudes_.norm(); }

 private:
  BasisDescriptor basis_;
  ComplexVector amplitudes_;
};

/// Linear operator with an explicit hermiticity tag. Constructing with
/// hermitian = true validates max|M - M*| <= 1e-12 elementwise.
class Operator {
 public:
  Operator(BasisDescriptor basis, ComplexMatrix matrix, bool hermitian);

  const BasisDescriptor& basis() const { return basis_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }

 private:
  BasisDescriptor basis_;
  ComplexMatrix matrix_;
  bool hermitian_;
};

/// Density matrix; Hermitian with unit trace (both validated to 1e-10).
class DensityMatrix {
 public:
  DensityMatrix(BasisDescriptor basis, ComplexMatrix matrix);

  static DensityMatrix from_state(const StateVector& psi);

  const BasisDescriptor& basis() const { return basis_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// Smallest eigenvalue; useful for positivity checks.
  double min_eigenvalue() const;

 private:
  BasisDescriptor basis_;
  ComplexMatrix matrix_;
};

/// Computational basis state from a '0'/'1' string (leftmost char = atom 0).
/// For a basis with a cavity, `photons` defaults to 0 when absent; for an
/// atoms-only basis passing `photons` is an error.
StateVector basis_state(const BasisDescriptor& basis, std::string_view bitstring,
                        std::optional<int> photons = std::nullopt);

/// <a|b>, conjugate-linear in the first argument. Bases must match.
Complex inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|^2; invariant under global phases of either argument.
double state_fidelity(const StateVector& a, const StateVector& b);

/// Kronecker product of two states. `a` must be atoms-only; `b` may carry the
/// cavity factor. a's atoms become the more significant digits.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Embed an atoms-only state into atoms (x) cavity with a fixed photon number.
StateVector attach_cavity(const StateVector& atoms_only, int fock_cutoff, int photons = 0);

/// Plain Kronecker product of matrices (row-major block convention).
ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

Operator identity_operator(const BasisDescriptor& basis);
Operator atom_lowering(const BasisDescriptor& basis, int atom);   // s_j^-
Operator atom_raising(const BasisDescriptor& basis, int atom);    // s_j^+
Operator atom_excited_projector(const BasisDescriptor& basis, int atom);
Operator cavity_annihilation(const BasisDescriptor& basis);       // a, truncated
Operator cavity_creation(const BasisDescriptor& basis);           // a^dagger, truncated
Operator cavity_number(const BasisDescriptor& basis);             // a^dagger a

/// Total excitation number: sum of atomic excited-state projectors plus the
/// photon number when the basis has a cavity.
Operator excitation_number(const BasisDescriptor& basis);

Complex expectation(const Operator& op, const StateVector& psi);

/// Reduced density matrix over the subsystems listed in `keep` (0-based;
/// the cavity, when present, is index atom_count). `keep` must be a nonempty
/// proper subset containing at least one atom; order of kept subsystems is
/// preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep);

}  // namespace cqed
