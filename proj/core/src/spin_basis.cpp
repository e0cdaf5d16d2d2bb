#include "spinchain/spin_basis.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "spinchain/errors.hpp"

namespace spinchain {

void ModelParams::validate() const {
  if (n_spins < kMinSpins || n_spins > kMaxSpins) {
    throw ParameterError("n_spins must lie in [2, 14], got " + std::to_string(n_spins));
  }
  if (!std::isfinite(coupling) || !std::isfinite(field) || !std::isfinite(kT)) {
    throw ParameterError("model parameters must be finite");
  }
  if (kT < 0.0) {
    throw ParameterError("kT must be non-negative");
  }
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int t = 1; t <= k; ++t) {
    r = r * static_cast<std::uint64_t>(n - k + t) / static_cast<std::uint64_t>(t);
  }
  return r;
}

SectorBasis::SectorBasis(int n_spins, int n_up) : n_spins_(n_spins), n_up_(n_up) {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw ParameterError("n_spins must lie in [1, 14], got " + std::to_string(n_spins));
  }
  if (n_up < 0 || n_up > n_spins) {
    throw ParameterError("n_up must lie in [0, " + std::to_string(n_spins) + "], got " +
                         std::to_string(n_up));
  }
  states_.reserve(binomial(n_spins, n_up));
  if (n_up == 0) {
    states_.push_back(0);
    return;
  }
  // Gosper's hack: next larger integer with the same popcount.
  const BasisState limit = BasisState{1} << n_spins;
  for (BasisState s = (BasisState{1} << n_up) - 1; s < limit;) {
    states_.push_back(s);
    const BasisState lowest = s & (~s + 1);
    const BasisState ripple = s + lowest;
    s = (((ripple ^ s) >> 2) / lowest) | ripple;
  }
}

std::optional<std::size_t> SectorBasis::index_of(BasisState pattern) const {
  if (pattern >> n_spins_ != 0 || std::popcount(pattern) != n_up_) return std::nullopt;
  std::size_t rank = 0;
  int t = 0;
  for (int p = 0; p < n_spins_; ++p) {
    if ((pattern >> p) & 1U) {
      ++t;
      rank += binomial(p, t);
    }
  }
  return rank;
}

SectorBasis enumerate_sector(int n_spins, int n_up) { return SectorBasis(n_spins, n_up); }

int zeeman_eigenvalue(int n_spins, int n_up) {
  if (n_up < 0 || n_up > n_spins) {
    throw ParameterError("n_up out of range for zeeman_eigenvalue");
  }
  return 2 * n_up - n_spins;
}

}  // namespace spinchain
