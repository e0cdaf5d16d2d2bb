#include "spinchain/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinchain/errors.hpp"

namespace spinchain {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-9;
constexpr double kNegativeClamp = 1e-10;
constexpr double kEntropyDomainSlack = 1e-12;

void require_symmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw ContractError("eigh_symmetric: matrix is " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + ", not square");
  }
  if (a.size() == 0) throw ContractError("eigh_symmetric: empty matrix");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= kSymmetryTol * scale)) {
    throw ContractError("eigh_symmetric: matrix not symmetric (max |A - A^T| = " +
                        std::to_string(asym) + ")");
  }
}

// -p log2 p with the 0 log 0 = 0 convention.
double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

EigenDecomposition eigh_symmetric(const Eigen::MatrixXd& matrix) {
  require_symmetric(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigh_symmetric: no convergence for dimension " +
                       std::to_string(matrix.rows()));
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd eigvalsh_symmetric(const Eigen::MatrixXd& matrix) {
  require_symmetric(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigvalsh_symmetric: no convergence for dimension " +
                       std::to_string(matrix.rows()));
  }
  return solver.eigenvalues();
}

double binary_entropy(double x) {
  if (!(x >= -kEntropyDomainSlack && x <= 1.0 + kEntropyDomainSlack)) {
    throw DomainError("binary_entropy: argument " + std::to_string(x) + " outside [0, 1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  // Canonicalize to the upper half: 1 - y is exact for y in [1/2, 1], which
  // makes h(x) and h(1 - x) bit-identical.
  const double hi = std::max(x, 1.0 - x);
  const double lo = 1.0 - hi;
  return entropy_term(hi) + entropy_term(lo);
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols() || rho.size() == 0) {
    throw StateValidityError("von_neumann_entropy: density matrix must be square");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw StateValidityError("von_neumann_entropy: density matrix not Hermitian");
  }
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol) {
    throw StateValidityError("von_neumann_entropy: trace " + std::to_string(trace) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("von_neumann_entropy: eigensolver failed");
  }
  double s = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda < -kNegativeClamp) {
      throw StateValidityError("von_neumann_entropy: negative eigenvalue " +
                               std::to_string(lambda));
    }
    s += entropy_term(std::max(lambda, 0.0));
  }
  return std::clamp(s, 0.0, std::log2(static_cast<double>(rho.rows())));
}

BoltzmannWeights stable_boltzmann_weights(std::span<const double> energies, double kT) {
  if (energies.empty()) throw ParameterError("stable_boltzmann_weights: no energies");
  if (!(kT > 0.0) || !std::isfinite(kT)) {
    throw ParameterError("stable_boltzmann_weights: kT must be positive and finite");
  }
  const double e_min = *std::min_element(energies.begin(), energies.end());
  if (!std::isfinite(e_min)) throw ParameterError("stable_boltzmann_weights: non-finite energy");

  BoltzmannWeights out;
  out.weights.resize(energies.size());
  double z = 0.0;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    if (!std::isfinite(energies[k])) {
      throw ParameterError("stable_boltzmann_weights: non-finite energy");
    }
    out.weights[k] = std::exp(-(energies[k] - e_min) / kT);
    z += out.weights[k];
  }
  for (double& w : out.weights) w /= z;
  out.log_z_shifted = std::log(z);
  return out;
}

}  // namespace spinchain
