#include "cqed/entanglement.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace cqed {

namespace {

constexpr double kPositivityFloor = -1e-10;

bool magnitudes_match(const StateVector& psi, const std::vector<std::pair<std::uint32_t, double>>& pattern,
                      double tol) {
  ComplexVector expect = ComplexVector::Zero(psi.dimension());
  for (auto [bits, mag] : pattern) expect(psi.basis().index_of(bits)) = mag;
  for (Eigen::Index i = 0; i < psi.dimension(); ++i)
    if (std::abs(std::abs(psi.amplitudes()(i)) - std::abs(expect(i))) > tol) return false;
  return true;
}

}  // namespace

bool TargetState::consistent(double tol) const {
  if (label == TargetLabel::custom) return true;
  int n = state.basis().atom_count();
  std::vector<std::pair<std::uint32_t, double>> pattern;
  switch (label) {
    case TargetLabel::w:
      for (int j = 0; j < n; ++j)
        pattern.emplace_back(1u << j, 1.0 / std::sqrt(static_cast<double>(n)));
      break;
    case TargetLabel::ghz:
      pattern.emplace_back(0u, 1.0 / std::sqrt(2.0));
      pattern.emplace_back((1u << n) - 1u, 1.0 / std::sqrt(2.0));
      break;
    case TargetLabel::bell_phi_plus:
    case TargetLabel::bell_phi_minus:
      pattern.emplace_back(0b00u, 1.0 / std::sqrt(2.0));
      pattern.emplace_back(0b11u, 1.0 / std::sqrt(2.0));
      break;
    case TargetLabel::bell_psi_plus:
    case TargetLabel::bell_psi_minus:
      pattern.emplace_back(0b01u, 1.0 / std::sqrt(2.0));
      pattern.emplace_back(0b10u, 1.0 / std::sqrt(2.0));
      break;
    default:
      return true;
  }
  return magnitudes_match(state, pattern, tol);
}

TargetState make_target(TargetLabel label, int n) {
  switch (label) {
    case TargetLabel::w: {
      if (n < 2) throw std::invalid_argument("W target needs at least 2 atoms");
      BasisDescriptor basis(n);
      ComplexVector amps = ComplexVector::Zero(basis.dimension());
      double a = 1.0 / std::sqrt(static_cast<double>(n));
      for (int j = 0; j < n; ++j) amps(basis.index_of(1u << j)) = a;
      return TargetState{label, StateVector(basis, std::move(amps))};
    }
    case TargetLabel::ghz: {
      if (n < 2) throw std::invalid_argument("GHZ target needs at least 2 atoms");
      BasisDescriptor basis(n);
      ComplexVector amps = ComplexVector::Zero(basis.dimension());
      amps(0) = 1.0 / std::sqrt(2.0);
      amps(basis.dimension() - 1) = 1.0 / std::sqrt(2.0);
      return TargetState{label, StateVector(basis, std::move(amps))};
    }
    case TargetLabel::bell_phi_plus:
    case TargetLabel::bell_phi_minus:
    case TargetLabel::bell_psi_plus:
    case TargetLabel::bell_psi_minus: {
      if (n != 2) throw std::invalid_argument("Bell targets are two-atom states");
      BasisDescriptor basis(2);
      ComplexVector amps = ComplexVector::Zero(4);
      double a = 1.0 / std::sqrt(2.0);
      switch (label) {
        case TargetLabel::bell_phi_plus:  amps(0) = a; amps(3) = a; break;
        case TargetLabel::bell_phi_minus: amps(0) = a; amps(3) = -a; break;
        case TargetLabel::bell_psi_plus:  amps(1) = a; amps(2) = a; break;
        default:                          amps(1) = a; amps(2) = -a; break;
      }
      return TargetState{label, StateVector(basis, std::move(amps))};
    }
    case TargetLabel::custom:
      throw std::invalid_argument("custom targets carry their own state; use TargetState::custom");
  }
  throw std::invalid_argument("unknown target label");
}

double concurrence(const DensityMatrix& rho) {
  if (rho.basis().atom_count() != 2 || rho.basis().has_cavity())
    throw std::invalid_argument("concurrence is defined for two-atom density matrices");
  const ComplexMatrix& r = rho.matrix();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(r);
  RealVector evals = es.eigenvalues();
  if (evals.minCoeff() < kPositivityFloor)
    throw std::invalid_argument("density matrix is not positive semidefinite");
  ComplexMatrix sqrt_rho = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    double ev = std::max(evals(k), 0.0);
    sqrt_rho += std::sqrt(ev) * es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
  }

  // sy x sy is real: antidiagonal (-1, 1, 1, -1).
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  yy(0, 3) = -1.0; yy(1, 2) = 1.0; yy(2, 1) = 1.0; yy(3, 0) = -1.0;

  ComplexMatrix m = sqrt_rho * yy * r.conjugate() * yy * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es2((m + m.adjoint()) / 2.0);
  std::array<double, 4> lam{};
  for (int k = 0; k < 4; ++k) lam[k] = std::sqrt(std::max(es2.eigenvalues()(k), 0.0));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  double c = lam[0] - lam[1] - lam[2] - lam[3];
  return std::clamp(c, 0.0, 1.0);
}

double fidelity_to(const StateVector& psi, const TargetState& target) {
  if (!(psi.basis() == target.state.basis()))
    throw std::invalid_argument("state and target bases differ");
  return state_fidelity(target.state, psi);
}

}  // namespace cqed
