#include "cqed/models.hpp"

#include <cmath>

namespace cqed {

namespace {

void validate(int n, double g, double delta, int fock_cutoff) {
  if (n < 1) throw std::invalid_argument("atom count must be >= 1");
  if (!(g >= 0.0)) throw std::invalid_argument("coupling g must be nonnegative");
  if (!(delta > 0.0)) throw std::invalid_argument("detuning delta must be positive");
  if (fock_cutoff < 1) throw std::invalid_argument("fock cutoff must be >= 1");
}

// sum_j a^dag s_j^- as a plain matrix on atoms (x) cavity.
ComplexMatrix collective_transfer(const BasisDescriptor& basis) {
  ComplexMatrix ad = cavity_creation(basis).matrix();
  ComplexMatrix sum = ComplexMatrix::Zero(basis.dimension(), basis.dimension());
  for (int j = 0; j < basis.atom_count(); ++j)
    sum += ad * atom_lowering(basis, j).matrix();
  return sum;
}

}  // namespace

ModelParams::ModelParams(int n, double g, double delta)
    : ModelParams(n, g, delta, n + 2) {}

ModelParams::ModelParams(int n, double g, double delta, int fock_cutoff)
    : n(n), g(g), delta(delta), fock_cutoff(fock_cutoff) {
  validate(n, g, delta, fock_cutoff);
}

Operator full_hamiltonian_at(const ModelParams& params, double t) {
  BasisDescriptor basis = params.cavity_basis();
  ComplexMatrix k = collective_transfer(basis);
  Complex phase = std::polar(1.0, -params.delta * t);
  ComplexMatrix h = params.g * (phase * k + std::conj(phase) * k.adjoint());
  return Operator(basis, std::move(h), true);
}

Operator static_frame_hamiltonian(const ModelParams& params) {
  BasisDescriptor basis = params.cavity_basis();
  ComplexMatrix k = collective_transfer(basis);
  ComplexMatrix h = params.g * (k + k.adjoint()) - params.delta * cavity_number(basis).matrix();
  return Operator(basis, std::move(h), true);
}

Operator effective_hamiltonian(const ModelParams& params) {
  BasisDescriptor basis = params.cavity_basis();
  ComplexMatrix a = cavity_annihilation(basis).matrix();
  ComplexMatrix ad = cavity_creation(basis).matrix();
  ComplexMatrix aad = a * ad;
  ComplexMatrix ada = ad * a;
  ComplexMatrix h = ComplexMatrix::Zero(basis.dimension(), basis.dimension());
  for (int i = 0; i < params.n; ++i) {
    ComplexMatrix si_minus = atom_lowering(basis, i).matrix();
    ComplexMatrix si_plus = atom_raising(basis, i).matrix();
    for (int j = 0; j < params.n; ++j) {
      ComplexMatrix sj_plus = atom_raising(basis, j).matrix();
      ComplexMatrix sj_minus = atom_lowering(basis, j).matrix();
      h += sj_plus * si_minus * aad - sj_minus * si_plus * ada;
    }
  }
  h *= params.lambda();
  return Operator(basis, std::move(h), true);
}

Operator vacuum_sector_hamiltonian(int n, double lambda) {
  if (n < 1) throw std::invalid_argument("atom count must be >= 1");
  BasisDescriptor basis(n);
  ComplexMatrix h = ComplexMatrix::Zero(basis.dimension(), basis.dimension());
  for (int j = 0; j < n; ++j) h += atom_excited_projector(basis, j).matrix();
  for (int j = 0; j < n; ++j) {
    ComplexMatrix sj_plus = atom_raising(basis, j).matrix();
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      h += sj_plus * atom_lowering(basis, i).matrix();
    }
  }
  h *= lambda;
  return Operator(basis, std::move(h), true);
}

Operator vacuum_sector_hamiltonian(const ModelParams& params) {
  return vacuum_sector_hamiltonian(params.n, params.lambda());
}

}  // namespace cqed
