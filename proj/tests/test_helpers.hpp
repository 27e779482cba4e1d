#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "cqed/hilbert.hpp"

namespace testutil {

inline constexpr double kPi = 3.14159265358979323846;

inline std::mt19937 make_rng(unsigned seed) { return std::mt19937(seed); }

inline cqed::StateVector random_state(const cqed::BasisDescriptor& basis, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  cqed::ComplexVector v(basis.dimension());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {gauss(rng), gauss(rng)};
  v /= v.norm();
  return cqed::StateVector(basis, std::move(v));
}

inline cqed::ComplexMatrix random_hermitian(Eigen::Index dim, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  cqed::ComplexMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = {gauss(rng), gauss(rng)};
  return 0.5 * (a + a.adjoint().eval());
}

// Random 2x2 special unitary from three Euler angles.
inline cqed::ComplexMatrix random_su2(std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  double alpha = uni(rng), beta = uni(rng), theta = 0.5 * uni(rng);
  cqed::ComplexMatrix u(2, 2);
  std::complex<double> ea = std::polar(1.0, alpha), eb = std::polar(1.0, beta);
  u(0, 0) = ea * std::cos(theta);
  u(0, 1) = eb * std::sin(theta);
  u(1, 0) = -std::conj(eb) * std::sin(theta);
  u(1, 1) = std::conj(ea) * std::cos(theta);
  return u;
}

inline double max_abs_diff(const cqed::ComplexMatrix& a, const cqed::ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

#ifdef CQED_CLI_PATH
struct CliResult {
  int exit_code;
  std::string out;
};

// Runs the installed command-line binary and captures stdout (stderr is
// silenced so error-path tests only see the exit code).
inline CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(CQED_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return {code, out};
}
#endif

}  // namespace testutil
