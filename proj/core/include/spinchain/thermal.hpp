#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "spinchain/numerics.hpp"
#include "spinchain/spin_basis.hpp"

namespace spinchain {

/// Energies within this relative window of the minimum form the kT = 0 ground manifold.
inline constexpr double kDegeneracyTol = 1e-9;
/// Eigenstates with a smaller Boltzmann weight are skipped when tracing out.
/// Concurrence responds to sqrt(weight), so this sits well below 1e-20.
inline constexpr double kWeightCutoff = 1e-30;

/// Exchange Hamiltonian of an (N, J) ring diagonalized sector by sector.
/// Eigenvectors do not depend on B, so one spectrum serves every (B, kT).
class ChainSpectrum {
 public:
  ChainSpectrum(int n_spins, double coupling, std::vector<SectorBasis> bases,
                std::vector<EigenDecomposition> sectors);

  int n_spins() const { return n_spins_; }
  double coupling() const { return coupling_; }
  int sector_count() const { return static_cast<int>(sectors_.size()); }
  const SectorBasis& basis(int n_up) const { return bases_.at(static_cast<std::size_t>(n_up)); }
  const EigenDecomposition& sector(int n_up) const {
    return sectors_.at(static_cast<std::size_t>(n_up));
  }
  int zeeman_slope(int n_up) const { return 2 * n_up - n_spins_; }
  std::size_t dimension() const { return std::size_t{1} << n_spins_; }

  /// Eigenvalues of exchange + Zeeman at field B, concatenated in sector order.
  std::vector<double> energies(double field) const;

 private:
  int n_spins_;
  double coupling_;
  std::vector<SectorBasis> bases_;
  std::vector<EigenDecomposition> sectors_;
};

/// Diagonalizes every magnetization sector; `threads` > 1 runs sectors concurrently.
ChainSpectrum diagonalize_chain(int n_spins, double coupling, int threads = 1);

/// Gibbs state e^{-H/kT}/Z, diagonal in the sector eigenbasis.
///
/// Holds a non-owning pointer to its spectrum, which must outlive it.
class GibbsEnsemble {
 public:
  const ChainSpectrum& spectrum() const { return *spectrum_; }
  double field() const { return field_; }
  double kT() const { return kT_; }
  double ground_energy() const { return ground_energy_; }
  /// log Z + E_0 / kT; zero-temperature ensembles store log(ground degeneracy).
  double log_z_shifted() const { return log_z_shifted_; }
  /// Weight of eigenstate `index` of sector `n_up`.
  double weight(int n_up, Eigen::Index index) const {
    return weights_[static_cast<std::size_t>(n_up)](index);
  }
  const Eigen::VectorXd& sector_weights(int n_up) const {
    return weights_.at(static_cast<std::size_t>(n_up));
  }
  /// Tr(rho H) from the weights.
  double mean_energy() const;

 private:
  friend GibbsEnsemble gibbs_weights(const ChainSpectrum&, double, double);
  GibbsEnsemble() = default;

  const ChainSpectrum* spectrum_ = nullptr;
  double field_ = 0.0;
  double kT_ = 0.0;
  double ground_energy_ = 0.0;
  double log_z_shifted_ = 0.0;
  std::vector<Eigen::VectorXd> weights_;
};

/// kT > 0: Boltzmann weights. kT == 0: uniform over the ground manifold
/// (energies within kDegeneracyTol * max(1, |E_0|) of the minimum).
GibbsEnsemble gibbs_weights(const ChainSpectrum& spectrum, double field, double kT);

struct SitePair {
  int i = 0;
  int j = 1;
  friend bool operator==(const SitePair&, const SitePair&) = default;
};

/// Reduced state of two spins over {|00>, |01>, |10>, |11>}, the first slot
/// being site i. Bit 1 is spin up.
class PairDensityMatrix {
 public:
  PairDensityMatrix(const Eigen::Matrix4cd& matrix, SitePair sites = {0, 1}, int separation = 1)
      : matrix_(matrix), sites_(sites), separation_(separation) {}

  const Eigen::Matrix4cd& matrix() const { return matrix_; }
  SitePair sites() const { return sites_; }
  int separation() const { return separation_; }

  /// Throws StateValidityError unless trace is 1 within 1e-10, Hermitian
  /// within 1e-12 and no eigenvalue is below -1e-10.
  void validate() const;

 private:
  Eigen::Matrix4cd matrix_;
  SitePair sites_;
  int separation_;
};

/// Ring distance min(|i - j|, N - |i - j|).
int ring_separation(int n_spins, SitePair sites);

/// Traces out all sites except i and j, accumulating eigenstate by
/// eigenstate and skipping weights below `weight_cutoff`.
PairDensityMatrix pair_rdm(const GibbsEnsemble& ensemble, int i, int j,
                           double weight_cutoff = kWeightCutoff);

/// Amplitudes over the full 2^N computational basis.
struct StateVector {
  int n_spins = 0;
  Eigen::VectorXcd amplitudes;
};

/// Embeds sector amplitudes into the full basis.
StateVector embed(const SectorBasis& basis, const Eigen::VectorXcd& amplitudes);

/// Pair reduced state of a pure state. StateValidityError if |psi| != 1 beyond 1e-10.
PairDensityMatrix pure_state_pair_rdm(const StateVector& state, int i, int j);
PairDensityMatrix pure_state_pair_rdm(const SectorBasis& basis, const Eigen::VectorXcd& amplitudes,
                                      int i, int j);

}  // namespace spinchain
