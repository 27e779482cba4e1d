#include "cqed/hilbert.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>

namespace cqed {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kHermitianTolerance = 1e-12;

void check_atom_count(int atom_count) {
  if (atom_count < 1 || atom_count > 20)
    throw std::invalid_argument("atom count must be in [1, 20]");
}

}  // namespace

BasisDescriptor::BasisDescriptor(int atom_count)
    : atom_count_(atom_count), fock_cutoff_(-1) {
  check_atom_count(atom_count);
}

BasisDescriptor::BasisDescriptor(int atom_count, int fock_cutoff)
    : atom_count_(atom_count), fock_cutoff_(fock_cutoff) {
  check_atom_count(atom_count);
  if (fock_cutoff < 1) throw std::invalid_argument("fock cutoff must be >= 1");
}

int BasisDescriptor::fock_cutoff() const {
  if (!has_cavity()) throw std::logic_error("basis has no cavity factor");
  return fock_cutoff_;
}

Eigen::Index BasisDescriptor::dimension() const {
  return (Eigen::Index{1} << atom_count_) * cavity_dimension();
}

Eigen::Index BasisDescriptor::index_of(std::uint32_t atom_bits, int photons) const {
  if (atom_bits >= (std::uint32_t{1} << atom_count_))
    throw std::invalid_argument("atom bit pattern out of range");
  if (photons < 0 || photons >= cavity_dimension())
    throw std::invalid_argument("photon number out of range");
  return static_cast<Eigen::Index>(atom_bits) * cavity_dimension() + photons;
}

std::uint32_t BasisDescriptor::atom_bits_at(Eigen::Index index) const {
  if (index < 0 || index >= dimension()) throw std::invalid_argument("index out of range");
  return static_cast<std::uint32_t>(index / cavity_dimension());
}

int BasisDescriptor::photons_at(Eigen::Index index) const {
  if (index < 0 || index >= dimension()) throw std::invalid_argument("index out of range");
  return static_cast<int>(index % cavity_dimension());
}

int BasisDescriptor::bit_of(std::uint32_t atom_bits, int atom) const {
  if (atom < 0 || atom >= atom_count_) throw std::invalid_argument("atom index out of range");
  return (atom_bits >> (atom_count_ - 1 - atom)) & 1u;
}

std::uint32_t BasisDescriptor::bits_from_string(std::string_view bitstring) const {
  if (static_cast<int>(bitstring.size()) != atom_count_)
    throw std::invalid_argument("bitstring length does not match atom count");
  std::uint32_t bits = 0;
  for (char c : bitstring) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring must contain only 0/1");
    bits = (bits << 1) | (c == '1' ? 1u : 0u);
  }
  return bits;
}

StateVector::StateVector(BasisDescriptor basis, ComplexVector amplitudes)
    : basis_(basis), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != basis_.dimension())
    throw std::invalid_argument("amplitude vector size does not match basis dimension");
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance)
    throw std::invalid_argument("state vector is not normalized");
}

StateVector StateVector::normalized(BasisDescriptor basis, ComplexVector amplitudes) {
  double n = amplitudes.norm();
  if (n < 1e-14) throw std::invalid_argument("cannot normalize a zero vector");
  return StateVector(basis, amplitudes / n);
}

Complex StateVector::amplitude(std::uint32_t atom_bits, int photons) const {
  return amplitudes_(basis_.index_of(atom_bits, photons));
}

Operator::Operator(BasisDescriptor basis, ComplexMatrix matrix, bool hermitian)
    : basis_(basis), matrix_(std::move(matrix)), hermitian_(hermitian) {
  if (matrix_.rows() != basis_.dimension() || matrix_.cols() != basis_.dimension())
    throw std::invalid_argument("operator matrix size does not match basis dimension");
  if (hermitian_) {
    double dev = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kHermitianTolerance)
      throw std::invalid_argument("matrix tagged hermitian deviates from its adjoint");
  }
}

DensityMatrix::DensityMatrix(BasisDescriptor basis, ComplexMatrix matrix)
    : basis_(basis), matrix_(std::move(matrix)) {
  if (matrix_.rows() != basis_.dimension() || matrix_.cols() != basis_.dimension())
    throw std::invalid_argument("density matrix size does not match basis dimension");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance)
    throw std::invalid_argument("density matrix is not hermitian");
  if (std::abs(matrix_.trace().real() - 1.0) > kNormTolerance ||
      std::abs(matrix_.trace().imag()) > kNormTolerance)
    throw std::invalid_argument("density matrix trace is not 1");
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  return DensityMatrix(psi.basis(), psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

StateVector basis_state(const BasisDescriptor& basis, std::string_view bitstring,
                        std::optional<int> photons) {
  if (!basis.has_cavity() && photons.has_value())
    throw std::invalid_argument("photon number given for a basis without a cavity");
  std::uint32_t bits = basis.bits_from_string(bitstring);
  int ph = basis.has_cavity() ? photons.value_or(0) : 0;
  ComplexVector amps = ComplexVector::Zero(basis.dimension());
  amps(basis.index_of(bits, ph)) = 1.0;
  return StateVector(basis, std::move(amps));
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (!(a.basis() == b.basis())) throw std::invalid_argument("inner product across different bases");
  return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the left factor
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  if (a.basis().has_cavity())
    throw std::invalid_argument("left tensor factor must be atoms-only (cavity index varies fastest)");
  int n = a.basis().atom_count() + b.basis().atom_count();
  BasisDescriptor combined = b.basis().has_cavity()
                                 ? BasisDescriptor(n, b.basis().fock_cutoff())
                                 : BasisDescriptor(n);
  ComplexVector amps(combined.dimension());
  for (Eigen::Index i = 0; i < a.dimension(); ++i)
    amps.segment(i * b.dimension(), b.dimension()) = a.amplitudes()(i) * b.amplitudes();
  return StateVector(combined, std::move(amps));
}

StateVector attach_cavity(const StateVector& atoms_only, int fock_cutoff, int photons) {
  if (atoms_only.basis().has_cavity())
    throw std::invalid_argument("state already has a cavity factor");
  BasisDescriptor combined(atoms_only.basis().atom_count(), fock_cutoff);
  if (photons < 0 || photons > fock_cutoff)
    throw std::invalid_argument("photon number out of range");
  ComplexVector amps = ComplexVector::Zero(combined.dimension());
  for (Eigen::Index i = 0; i < atoms_only.dimension(); ++i)
    amps(combined.index_of(static_cast<std::uint32_t>(i), photons)) = atoms_only.amplitudes()(i);
  return StateVector(combined, std::move(amps));
}

namespace {

// Builds kron(I_left, M, I_right) where M acts on one subsystem.
ComplexMatrix embed_single(const BasisDescriptor& basis, int subsystem, const ComplexMatrix& m) {
  Eigen::Index left = 1, right = 1;
  int count = basis.subsystem_count();
  auto dim_of = [&](int k) -> Eigen::Index {
    return (k < basis.atom_count()) ? 2 : basis.cavity_dimension();
  };
  for (int k = 0; k < subsystem; ++k) left *= dim_of(k);
  for (int k = subsystem + 1; k < count; ++k) right *= dim_of(k);
  ComplexMatrix il = ComplexMatrix::Identity(left, left);
  ComplexMatrix ir = ComplexMatrix::Identity(right, right);
  return kronecker(kronecker(il, m), ir);
}

ComplexMatrix lowering2x2() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 1) = 1.0;  // |0><1|
  return s;
}

ComplexMatrix annihilation_matrix(Eigen::Index dim) {
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index m = 1; m < dim; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  return a;
}

void require_cavity(const BasisDescriptor& basis) {
  if (!basis.has_cavity()) throw std::invalid_argument("basis has no cavity factor");
}

void require_atom(const BasisDescriptor& basis, int atom) {
  if (atom < 0 || atom >= basis.atom_count())
    throw std::invalid_argument("atom index out of range");
}

}  // namespace

Operator identity_operator(const BasisDescriptor& basis) {
  return Operator(basis, ComplexMatrix::Identity(basis.dimension(), basis.dimension()), true);
}

Operator atom_lowering(const BasisDescriptor& basis, int atom) {
  require_atom(basis, atom);
  return Operator(basis, embed_single(basis, atom, lowering2x2()), false);
}

Operator atom_raising(const BasisDescriptor& basis, int atom) {
  require_atom(basis, atom);
  return Operator(basis, embed_single(basis, atom, lowering2x2().adjoint()), false);
}

Operator atom_excited_projector(const BasisDescriptor& basis, int atom) {
  require_atom(basis, atom);
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(1, 1) = 1.0;
  return Operator(basis, embed_single(basis, atom, p), true);
}

Operator cavity_annihilation(const BasisDescriptor& basis) {
  require_cavity(basis);
  return Operator(basis, embed_single(basis, basis.atom_count(), annihilation_matrix(basis.cavity_dimension())), false);
}

Operator cavity_creation(const BasisDescriptor& basis) {
  require_cavity(basis);
  return Operator(basis, embed_single(basis, basis.atom_count(), annihilation_matrix(basis.cavity_dimension()).adjoint().eval()), false);
}

Operator cavity_number(const BasisDescriptor& basis) {
  require_cavity(basis);
  ComplexMatrix a = annihilation_matrix(basis.cavity_dimension());
  return Operator(basis, embed_single(basis, basis.atom_count(), (a.adjoint() * a).eval()), true);
}

Operator excitation_number(const BasisDescriptor& basis) {
  ComplexMatrix total = ComplexMatrix::Zero(basis.dimension(), basis.dimension());
  for (int j = 0; j < basis.atom_count(); ++j)
    total += atom_excited_projector(basis, j).matrix();
  if (basis.has_cavity()) total += cavity_number(basis).matrix();
  return Operator(basis, std::move(total), true);
}

Complex expectation(const Operator& op, const StateVector& psi) {
  if (!(op.basis() == psi.basis())) throw std::invalid_argument("operator and state bases differ");
  return psi.amplitudes().dot(op.matrix() * psi.amplitudes());
}

namespace {

DensityMatrix partial_trace_impl(const BasisDescriptor& basis, const ComplexMatrix& rho,
                                 const std::vector<int>& keep) {
  int count = basis.subsystem_count();
  std::set<int> keep_set(keep.begin(), keep.end());
  if (keep_set.size() != keep.size()) throw std::invalid_argument("duplicate subsystem in keep list");
  if (keep_set.empty()) throw std::invalid_argument("keep list is empty");
  for (int k : keep_set)
    if (k < 0 || k >= count) throw std::invalid_argument("invalid subsystem index in keep list");
  if (static_cast<int>(keep_set.size()) == count)
    throw std::invalid_argument("keep list covers the whole system; nothing to trace");

  int kept_atoms = 0;
  bool keep_cavity = false;
  for (int k : keep_set) {
    if (k < basis.atom_count())
      ++kept_atoms;
    else
      keep_cavity = true;
  }
  if (kept_atoms == 0) throw std::invalid_argument("keep list must contain at least one atom");

  std::vector<Eigen::Index> dims(count);
  for (int k = 0; k < count; ++k)
    dims[k] = (k < basis.atom_count()) ? 2 : basis.cavity_dimension();

  // Mixed-radix strides, most significant subsystem first.
  std::vector<Eigen::Index> stride(count);
  Eigen::Index acc = 1;
  for (int k = count - 1; k >= 0; --k) {
    stride[k] = acc;
    acc *= dims[k];
  }

  std::vector<int> kept(keep_set.begin(), keep_set.end());
  std::vector<int> traced;
  for (int k = 0; k < count; ++k)
    if (!keep_set.count(k)) traced.push_back(k);

  Eigen::Index kept_dim = 1, traced_dim = 1;
  for (int k : kept) kept_dim *= dims[k];
  for (int k : traced) traced_dim *= dims[k];

  auto compose = [&](const std::vector<int>& subs, Eigen::Index packed) {
    Eigen::Index full = 0;
    for (int s = static_cast<int>(subs.size()) - 1; s >= 0; --s) {
      full += (packed % dims[subs[s]]) * stride[subs[s]];
      packed /= dims[subs[s]];
    }
    return full;
  };

  ComplexMatrix reduced = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (Eigen::Index i = 0; i < kept_dim; ++i) {
    Eigen::Index base_i = compose(kept, i);
    for (Eigen::Index j = 0; j < kept_dim; ++j) {
      Eigen::Index base_j = compose(kept, j);
      Complex sum = 0.0;
      for (Eigen::Index t = 0; t < traced_dim; ++t) {
        Eigen::Index off = compose(traced, t);
        sum += rho(base_i + off, base_j + off);
      }
      reduced(i, j) = sum;
    }
  }

  BasisDescriptor out = keep_cavity ? BasisDescriptor(kept_atoms, basis.fock_cutoff())
                                    : BasisDescriptor(kept_atoms);
  return DensityMatrix(out, std::move(reduced));
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  return partial_trace_impl(rho.basis(), rho.matrix(), keep);
}

DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep) {
  ComplexMatrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
  return partial_trace_impl(psi.basis(), rho, keep);
}

}  // namespace cqed
