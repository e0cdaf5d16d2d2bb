#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spinchain {

/// Eigenpairs of a real symmetric matrix, values ascending, vectors as columns.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Full symmetric eigendecomposition.
///
/// Throws ContractError if the input is not square or not symmetric to
/// 1e-12 relative tolerance, NumericError (naming the dimension) if the
/// solver does not converge.
EigenDecomposition eigh_symmetric(const Eigen::MatrixXd& matrix);

/// Ascending eigenvalues only; same contract as eigh_symmetric.
Eigen::VectorXd eigvalsh_symmetric(const Eigen::MatrixXd& matrix);

/// h(x) = -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0.
/// Inputs within 1e-12 outside [0, 1] are clamped; beyond that DomainError.
double binary_entropy(double x);

/// -sum lambda log2 lambda over the spectrum of a Hermitian unit-trace PSD
/// matrix. Negative eigenvalues down to -1e-10 are clamped to zero.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

struct BoltzmannWeights {
  std::vector<double> weights;  // e^{-(E_k - E_min)/kT} / Z'
  double log_z_shifted = 0.0;   // log Z + E_min / kT
};

/// Normalized Boltzmann weights computed relative to the minimum energy.
/// Requires kT > 0 and finite energies (ParameterError otherwise).
BoltzmannWeights stable_boltzmann_weights(std::span<const double> energies, double kT);

}  // namespace spinchain
