#include "spinchain/thermal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "spinchain/errors.hpp"
#include "spinchain/hamiltonian.hpp"
#include "spinchain/parallel.hpp"

namespace spinchain {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kHermitianTol = 1e-12;
constexpr double kNegativeTol = 1e-10;
constexpr double kNormTol = 1e-10;

void check_sites(int n_spins, int i, int j) {
  if (i < 0 || j < 0 || i >= n_spins || j >= n_spins) {
    throw ParameterError("site index out of range: (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") for N = " + std::to_string(n_spins));
  }
  if (i == j) throw ParameterError("pair sites must differ, got i = j = " + std::to_string(i));
}

int pair_slot(BasisState s, int i, int j) {
  return static_cast<int>(((s >> i) & 1U) * 2U + ((s >> j) & 1U));
}

}  // namespace

ChainSpectrum::ChainSpectrum(int n_spins, double coupling, std::vector<SectorBasis> bases,
                             std::vector<EigenDecomposition> sectors)
    : n_spins_(n_spins),
      coupling_(coupling),
      bases_(std::move(bases)),
      sectors_(std::move(sectors)) {
  if (bases_.size() != static_cast<std::size_t>(n_spins_) + 1 || sectors_.size() != bases_.size()) {
    throw ContractError("ChainSpectrum needs one basis and one decomposition per sector");
  }
}

std::vector<double> ChainSpectrum::energies(double field) const {
  std::vector<double> out;
  out.reserve(dimension());
  for (int k = 0; k < sector_count(); ++k) {
    const double shift = field * zeeman_slope(k);
    for (double e : sector(k).values) out.push_back(e + shift);
  }
  return out;
}

ChainSpectrum diagonalize_chain(int n_spins, double coupling, int threads) {
  const ModelParams params{n_spins, coupling, 0.0, 0.0};
  params.validate();
  const auto count = static_cast<std::size_t>(n_spins) + 1;
  std::vector<SectorBasis> bases;
  bases.reserve(count);
  for (int k = 0; k <= n_spins; ++k) bases.push_back(enumerate_sector(n_spins, k));

  std::vector<EigenDecomposition> sectors(count);
  // Largest sectors first so the pool is not left waiting on the middle one.
  std::vector<int> order(count);
  for (std::size_t k = 0; k < count; ++k) order[k] = static_cast<int>(k);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return bases[static_cast<std::size_t>(a)].size() > bases[static_cast<std::size_t>(b)].size();
  });
  parallel_for(count, threads, [&](std::size_t slot) {
    const int k = order[slot];
    sectors[static_cast<std::size_t>(k)] =
        eigh_symmetric(build_sector_hamiltonian(params, k).matrix);
  });
  return ChainSpectrum(n_spins, coupling, std::move(bases), std::move(sectors));
}

double GibbsEnsemble::mean_energy() const {
  double e = 0.0;
  for (int k = 0; k < spectrum_->sector_count(); ++k) {
    const double shift = field_ * spectrum_->zeeman_slope(k);
    e += weights_[static_cast<std::size_t>(k)].dot(
        (spectrum_->sector(k).values.array() + shift).matrix());
  }
  return e;
}

GibbsEnsemble gibbs_weights(const ChainSpectrum& spectrum, double field, double kT) {
  if (!std::isfinite(field)) throw ParameterError("field must be finite");
  if (!(kT >= 0.0) || !std::isfinite(kT)) throw ParameterError("kT must be finite and >= 0");

  GibbsEnsemble ens;
  ens.spectrum_ = &spectrum;
  ens.field_ = field;
  ens.kT_ = kT;
  ens.weights_.resize(static_cast<std::size_t>(spectrum.sector_count()));

  const std::vector<double> energies = spectrum.energies(field);
  ens.ground_energy_ = *std::min_element(energies.begin(), energies.end());

  std::vector<double> flat;
  if (kT > 0.0) {
    auto bw = stable_boltzmann_weights(energies, kT);
    flat = std::move(bw.weights);
    ens.log_z_shifted_ = bw.log_z_shifted;
  } else {
    const double window = kDegeneracyTol * std::max(1.0, std::abs(ens.ground_energy_));
    flat.assign(energies.size(), 0.0);
    std::size_t degeneracy = 0;
    for (std::size_t k = 0; k < energies.size(); ++k) {
      if (energies[k] - ens.ground_energy_ <= window) {
        flat[k] = 1.0;
        ++degeneracy;
      }
    }
    for (double& w : flat) w /= static_cast<double>(degeneracy);
    ens.log_z_shifted_ = std::log(static_cast<double>(degeneracy));
  }

  std::size_t offset = 0;
  for (int k = 0; k < spectrum.sector_count(); ++k) {
    const auto dim = spectrum.sector(k).values.size();
    ens.weights_[static_cast<std::size_t>(k)] =
        Eigen::Map<const Eigen::VectorXd>(flat.data() + offset, dim);
    offset += static_cast<std::size_t>(dim);
  }
  return ens;
}

void PairDensityMatrix::validate() const {
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol || std::abs(matrix_.trace().imag()) > kTraceTol) {
    throw StateValidityError("pair density matrix trace " + std::to_string(trace) + " != 1");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw StateValidityError("pair density matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kNegativeTol) {
    throw StateValidityError("pair density matrix has eigenvalue " +
                             std::to_string(solver.eigenvalues().minCoeff()));
  }
}

int ring_separation(int n_spins, SitePair sites) {
  const int diff = std::abs(sites.i - sites.j);
  return std::min(diff, n_spins - diff);
}

PairDensityMatrix pair_rdm(const GibbsEnsemble& ensemble, int i, int j, double weight_cutoff) {
  const ChainSpectrum& spectrum = ensemble.spectrum();
  check_sites(spectrum.n_spins(), i, j);
  const BasisState swap_mask = (BasisState{1} << i) | (BasisState{1} << j);

  std::array<double, 4> populations{};
  double coherence = 0.0;  // <01| rho |10>
  std::vector<int> slots;
  std::vector<Eigen::Index> partners;

  for (int k = 0; k < spectrum.sector_count(); ++k) {
    const SectorBasis& basis = spectrum.basis(k);
    const EigenDecomposition& eig = spectrum.sector(k);
    const Eigen::VectorXd& w = ensemble.sector_weights(k);
    if (w.maxCoeff() < weight_cutoff) continue;

    const auto dim = static_cast<Eigen::Index>(basis.size());
    slots.resize(static_cast<std::size_t>(dim));
    partners.clear();
    for (Eigen::Index a = 0; a < dim; ++a) {
      const BasisState s = basis[static_cast<std::size_t>(a)];
      const int slot = pair_slot(s, i, j);
      slots[static_cast<std::size_t>(a)] = slot;
      if (slot == 1) {
        partners.push_back(a);
        partners.push_back(static_cast<Eigen::Index>(*basis.index_of(s ^ swap_mask)));
      }
    }

    for (Eigen::Index n = 0; n < dim; ++n) {
      const double wn = w(n);
      if (wn < weight_cutoff) continue;
      const double* psi = eig.vectors.col(n).data();
      for (Eigen::Index a = 0; a < dim; ++a) {
        populations[static_cast<std::size_t>(slots[static_cast<std::size_t>(a)])] +=
            wn * psi[a] * psi[a];
      }
      double c = 0.0;
      for (std::size_t p = 0; p < partners.size(); p += 2) c += psi[partners[p]] * psi[partners[p + 1]];
      coherence += wn * c;
    }
  }

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (int s = 0; s < 4; ++s) rho(s, s) = populations[static_cast<std::size_t>(s)];
  rho(1, 2) = coherence;
  rho(2, 1) = coherence;
  const SitePair sites{i, j};
  return PairDensityMatrix(rho, sites, ring_separation(spectrum.n_spins(), sites));
}

StateVector embed(const SectorBasis& basis, const Eigen::VectorXcd& amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != basis.size()) {
    throw ContractError("amplitude count does not match sector dimension");
  }
  StateVector out{basis.n_spins(),
                  Eigen::VectorXcd::Zero(Eigen::Index{1} << basis.n_spins())};
  for (std::size_t a = 0; a < basis.size(); ++a) {
    out.amplitudes(static_cast<Eigen::Index>(basis[a])) = amplitudes(static_cast<Eigen::Index>(a));
  }
  return out;
}

PairDensityMatrix pure_state_pair_rdm(const StateVector& state, int i, int j) {
  const int n = state.n_spins;
  if (n < kMinSpins || n > kMaxSpins ||
      state.amplitudes.size() != (Eigen::Index{1} << n)) {
    throw ContractError("state vector size does not match 2^N");
  }
  check_sites(n, i, j);
  if (std::abs(state.amplitudes.norm() - 1.0) > kNormTol) {
    throw StateValidityError("state vector is not normalized (norm " +
                             std::to_string(state.amplitudes.norm()) + ")");
  }
  // Group amplitudes by the configuration of the traced-out sites.
  const BasisState pair_mask = (BasisState{1} << i) | (BasisState{1} << j);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  const BasisState dim = BasisState{1} << n;
  for (BasisState rest = 0; rest < dim; ++rest) {
    if (rest & pair_mask) continue;
    Eigen::Vector4cd local;
    for (BasisState a = 0; a < 2; ++a) {
      for (BasisState b = 0; b < 2; ++b) {
        local(static_cast<Eigen::Index>(2 * a + b)) =
            state.amplitudes(static_cast<Eigen::Index>(rest | (a << i) | (b << j)));
      }
    }
    rho.noalias() += local * local.adjoint();
  }
  const SitePair sites{i, j};
  return PairDensityMatrix(rho, sites, ring_separation(n, sites));
}

PairDensityMatrix pure_state_pair_rdm(const SectorBasis& basis, const Eigen::VectorXcd& amplitudes,
                                      int i, int j) {
  return pure_state_pair_rdm(embed(basis, amplitudes), i, j);
}

}  // namespace spinchain
