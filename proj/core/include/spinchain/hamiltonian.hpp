#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spinchain/spin_basis.hpp"

namespace spinchain {

/// Exchange part J sum_i sigma^i . sigma^{i+1} of the ring Hamiltonian,
/// restricted to one magnetization sector. The Zeeman term is a constant
/// B (2 n_up - N) on the sector and is never stored here.
struct SectorHamiltonian {
  SectorBasis basis;
  Eigen::MatrixXd matrix;
  // The cyclic sum over i = 0..N-1 visits bond (0,1) twice when N == 2.
  bool doubled_bond = false;
};

SectorHamiltonian build_sector_hamiltonian(const ModelParams& params, int n_up);

struct Level {
  double energy;
  int n_up;
};

/// All 2^N eigenvalues of the full Hamiltonian (exchange + Zeeman), ascending.
std::vector<Level> full_eigenvalues(const ModelParams& params);

/// Lowest exchange eigenvalue of every sector n_up = 0..N.
std::vector<double> sector_ground_energies(int n_spins, double coupling);

/// Field beyond which |00...0> is the ground state of the antiferromagnetic
/// ring: 4J for even N, 2J(1 + cos(pi/N)) for odd N. ParameterError if J <= 0.
double critical_field_closed_form(int n_spins, double coupling);

/// 8J / ln 3: above this kT the two-spin ring carries no entanglement.
double critical_temperature_two_qubit(double coupling);

}  // namespace spinchain
