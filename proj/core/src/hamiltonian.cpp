#include "spinchain/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spinchain/errors.hpp"
#include "spinchain/numerics.hpp"

namespace spinchain {

SectorHamiltonian build_sector_hamiltonian(const ModelParams& params, int n_up) {
  params.validate();
  SectorHamiltonian h{enumerate_sector(params.n_spins, n_up), {}, params.n_spins == 2};
  const int n = params.n_spins;
  const double j = params.coupling;
  const auto dim = static_cast<Eigen::Index>(h.basis.size());
  h.matrix = Eigen::MatrixXd::Zero(dim, dim);

  for (Eigen::Index col = 0; col < dim; ++col) {
    const BasisState s = h.basis[static_cast<std::size_t>(col)];
    for (int site = 0; site < n; ++site) {
      const int next = (site + 1) % n;
      const bool aligned = ((s >> site) & 1U) == ((s >> next) & 1U);
      if (aligned) {
        h.matrix(col, col) += j;
      } else {
        h.matrix(col, col) -= j;
        // sigma_x sigma_x + sigma_y sigma_y = 2 (S+ S- + S- S+) swaps the pair.
        const BasisState flipped = s ^ (BasisState{1} << site) ^ (BasisState{1} << next);
        const auto row = static_cast<Eigen::Index>(*h.basis.index_of(flipped));
        h.matrix(row, col) += 2.0 * j;
      }
    }
  }
  return h;
}

std::vector<Level> full_eigenvalues(const ModelParams& params) {
  params.validate();
  std::vector<Level> levels;
  levels.reserve(std::size_t{1} << params.n_spins);
  for (int k = 0; k <= params.n_spins; ++k) {
    const auto h = build_sector_hamiltonian(params, k);
    const double shift = params.field * zeeman_eigenvalue(params.n_spins, k);
    for (double e : eigvalsh_symmetric(h.matrix)) levels.push_back({e + shift, k});
  }
  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& a, const Level& b) { return a.energy < b.energy; });
  return levels;
}

std::vector<double> sector_ground_energies(int n_spins, double coupling) {
  const ModelParams params{n_spins, coupling, 0.0, 0.0};
  params.validate();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_spins) + 1);
  for (int k = 0; k <= n_spins; ++k) {
    out.push_back(eigvalsh_symmetric(build_sector_hamiltonian(params, k).matrix)(0));
  }
  return out;
}

double critical_field_closed_form(int n_spins, double coupling) {
  if (n_spins < kMinSpins) throw ParameterError("critical field needs N >= 2");
  if (!(coupling > 0.0)) {
    throw ParameterError("critical field is defined for the antiferromagnet (J > 0)");
  }
  if (n_spins % 2 == 0) return 4.0 * coupling;
  return 2.0 * coupling * (1.0 + std::cos(std::numbers::pi / n_spins));
}

double critical_temperature_two_qubit(double coupling) {
  if (!(coupling > 0.0)) {
    throw ParameterError("critical temperature is defined for the antiferromagnet (J > 0)");
  }
  return 8.0 * coupling / std::log(3.0);
}

}  // namespace spinchain
