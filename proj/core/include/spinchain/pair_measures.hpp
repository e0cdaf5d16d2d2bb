#pragma once

#include <array>

#include <Eigen/Dense>

#include "spinchain/thermal.hpp"

namespace spinchain {

/// Concurrence values below this are reported as exactly zero.
inline constexpr double kConcurrenceFlush = 1e-12;
/// M must exceed 1 by more than this to count as a CHSH violation.
inline constexpr double kChshViolationTol = 1e-12;

struct ConcurrenceResult {
  double concurrence = 0.0;
  std::array<double, 4> lambda{};  // decreasing
};

/// Wootters concurrence max(l1 - l2 - l3 - l4, 0), where l_i are the square
/// roots of the eigenvalues of rho (Y x Y) rho* (Y x Y) in the standard basis.
ConcurrenceResult concurrence(const PairDensityMatrix& rho);

/// Entanglement of formation h((1 + sqrt(1 - C^2)) / 2), in ebits.
double eof_from_concurrence(double c);

/// Closed-form concurrence of the thermal two-spin ring (doubled bond).
/// DomainError if kT <= 0.
double analytic_two_qubit_concurrence(double coupling, double field, double kT);

/// I(i:j) = S(rho_i) + S(rho_j) - S(rho_ij), base-2 logarithms.
double mutual_information(const PairDensityMatrix& rho);

/// Single-site marginals of a pair state.
Eigen::Matrix2cd first_site_state(const Eigen::Matrix4cd& rho);
Eigen::Matrix2cd second_site_state(const Eigen::Matrix4cd& rho);

struct ChshResult {
  Eigen::Matrix3d correlations;  // T_nm = Tr[rho sigma_n x sigma_m], n,m in {x,y,z}
  double m = 0.0;                // sum of the two largest eigenvalues of T^T T
  bool violated = false;         // m > 1
  double max_bell_value() const;  // 2 sqrt(m)
};

ChshResult chsh_quantity(const PairDensityMatrix& rho);

struct PairMeasures {
  double concurrence = 0.0;
  double eof = 0.0;
  double mutual_information = 0.0;
  double chsh_m = 0.0;
};

PairMeasures compute_pair_measures(const PairDensityMatrix& rho);

/// (|10..0> + |01..0> + ... + |0..01>) / sqrt(N).
StateVector w_state(int n_spins);

struct ProjectionOutcome {
  Eigen::Vector4cd pair_state;  // normalized, over {|00>, |01>, |10>, |11>}
  double probability = 0.0;
  PairDensityMatrix density() const;
};

/// Measures every site except i and j in sigma_z and post-selects all of
/// them down. MeasurementOutcomeError if that outcome has zero probability.
ProjectionOutcome project_remaining_down(const StateVector& state, int i, int j);

}  // namespace spinchain
