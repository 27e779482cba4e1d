#include "cqed/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace cqed {

namespace {

constexpr double kZeroBranch = 1e-12;

ComplexVector apply_spectral(const RealVector& evals, const ComplexMatrix& evecs,
                             const ComplexVector& psi, double t) {
  ComplexVector coeffs = evecs.adjoint() * psi;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    coeffs(k) *= std::polar(1.0, -evals(k) * t);
  return evecs * coeffs;
}

}  // namespace

Propagator::Propagator(const Operator& hamiltonian) : basis_(hamiltonian.basis()) {
  if (!hamiltonian.hermitian())
    throw std::invalid_argument("propagator requires a hermitian generator");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hamiltonian.matrix());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
}

StateVector Propagator::evolve(const StateVector& psi0, double t) const {
  if (!(psi0.basis() == basis_))
    throw std::invalid_argument("state basis does not match propagator basis");
  return StateVector(basis_, apply_spectral(eigenvalues_, eigenvectors_, psi0.amplitudes(), t));
}

StateVector evolve(const Propagator& propagator, const StateVector& psi0, double t) {
  return propagator.evolve(psi0, t);
}

StateVector evolve_timedep(const ModelParams& params, const StateVector& psi0, double t,
                           double dt_max) {
  if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
  if (!(psi0.basis() == params.cavity_basis()))
    throw std::invalid_argument("state basis does not match model basis");
  if (t == 0.0) return psi0;

  // |H(t)| is t-independent (H(t) is a cavity-phase conjugation of H(0)).
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> norm_es(full_hamiltonian_at(params, 0.0).matrix(),
                                                       Eigen::EigenvaluesOnly);
  double h_norm = norm_es.eigenvalues().cwiseAbs().maxCoeff();
  double dt = dt_max;
  if (h_norm > 0.0) dt = std::min(dt, 0.05 / h_norm);
  dt = std::min(dt, 0.05 / params.delta);

  long steps = static_cast<long>(std::ceil(std::abs(t) / dt));
  if (steps < 1) steps = 1;
  double tau = t / static_cast<double>(steps);

  // CF4: two Gauss-Legendre samples per step, combined with weights
  // 1/4 +- sqrt(3)/6; the later sample dominates the factor applied last.
  const double root3 = std::sqrt(3.0);
  const double c1 = 0.5 - root3 / 6.0, c2 = 0.5 + root3 / 6.0;
  const double w_minus = 0.25 - root3 / 6.0, w_plus = 0.25 + root3 / 6.0;

  ComplexVector psi = psi0.amplitudes();
  for (long s = 0; s < steps; ++s) {
    double t0 = static_cast<double>(s) * tau;
    ComplexMatrix h1 = full_hamiltonian_at(params, t0 + c1 * tau).matrix();
    ComplexMatrix h2 = full_hamiltonian_at(params, t0 + c2 * tau).matrix();
    ComplexMatrix a_first = w_plus * h1 + w_minus * h2;
    ComplexMatrix a_second = w_minus * h1 + w_plus * h2;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es1(a_first);
    psi = apply_spectral(es1.eigenvalues(), es1.eigenvectors(), psi, tau);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es2(a_second);
    psi = apply_spectral(es2.eigenvalues(), es2.eigenvectors(), psi, tau);
  }
  return StateVector(psi0.basis(), std::move(psi));
}

StateVector evolve_via_static_frame(const ModelParams& params, const StateVector& psi0, double t) {
  Propagator frame(static_frame_hamiltonian(params));
  StateVector rotated = frame.evolve(psi0, t);
  BasisDescriptor basis = params.cavity_basis();
  ComplexVector amps = rotated.amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    amps(i) *= std::polar(1.0, -params.delta * t * basis.photons_at(i));
  return StateVector(basis, std::move(amps));
}

StateVector analytic_w_evolution(int n, double lambda_t) {
  if (n < 2) throw std::invalid_argument("W-class evolution needs at least 2 atoms");
  BasisDescriptor basis(n);
  Complex z = std::polar(1.0, -static_cast<double>(n) * lambda_t);
  Complex survivor = (z + static_cast<double>(n - 1)) / static_cast<double>(n);
  Complex transfer = (z - 1.0) / static_cast<double>(n);
  ComplexVector amps = ComplexVector::Zero(basis.dimension());
  amps(basis.index_of(1u)) = survivor;  // |0...01>
  for (int j = 0; j < n - 1; ++j)
    amps(basis.index_of(1u << (n - 1 - j))) = transfer;
  return StateVector(basis, std::move(amps));
}

StateVector analytic_ghz4_evolution(double lambda_t, Ghz4Frequency mode) {
  BasisDescriptor basis(4);
  double omega = (mode == Ghz4Frequency::corrected) ? 2.0 : 3.0;
  Complex u = std::polar(1.0, -6.0 * lambda_t);
  Complex v = std::polar(1.0, -omega * lambda_t);
  Complex main = (u + 3.0 * v + 2.0) / 6.0;
  Complex opposite = (u - 3.0 * v + 2.0) / 6.0;
  Complex cross = (u - 1.0) / 6.0;
  ComplexVector amps = ComplexVector::Zero(basis.dimension());
  amps(basis.index_of(0b0011u)) = main;
  amps(basis.index_of(0b1100u)) = opposite;
  for (std::uint32_t bits : {0b0101u, 0b0110u, 0b1001u, 0b1010u})
    amps(basis.index_of(bits)) = cross;
  return StateVector(basis, std::move(amps));
}

MeasurementRecord measure_atom(const StateVector& psi, int atom_index, int outcome) {
  const BasisDescriptor& basis = psi.basis();
  if (atom_index < 0 || atom_index >= basis.atom_count())
    throw std::invalid_argument("atom index out of range");
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
  if (basis.atom_count() < 2)
    throw std::invalid_argument("cannot factor out the only atom");

  BasisDescriptor reduced = basis.has_cavity()
                                ? BasisDescriptor(basis.atom_count() - 1, basis.fock_cutoff())
                                : BasisDescriptor(basis.atom_count() - 1);
  ComplexVector post = ComplexVector::Zero(reduced.dimension());
  double weight = 0.0;
  std::uint32_t low_mask = (1u << (basis.atom_count() - 1 - atom_index)) - 1u;
  for (Eigen::Index i = 0; i < psi.dimension(); ++i) {
    std::uint32_t bits = basis.atom_bits_at(i);
    if (basis.bit_of(bits, atom_index) != outcome) continue;
    Complex amp = psi.amplitudes()(i);
    weight += std::norm(amp);
    std::uint32_t reduced_bits = ((bits >> (basis.atom_count() - atom_index)) << (basis.atom_count() - 1 - atom_index)) |
                                 (bits & low_mask);
    post(reduced.index_of(reduced_bits, basis.photons_at(i))) = amp;
  }
  if (weight < kZeroBranch)
    throw zero_probability_error("measurement branch has zero probability");
  post /= std::sqrt(weight);
  return MeasurementRecord{atom_index, outcome, weight, StateVector(reduced, std::move(post))};
}

double distillation_probability(int n, double lambda_t) {
  if (n < 3) throw std::invalid_argument("distillation needs at least 3 atoms");
  double nn = static_cast<double>(n);
  return (nn - 1.0) / (nn * nn) * (2.0 - 2.0 * std::cos(nn * lambda_t));
}

}  // namespace cqed
