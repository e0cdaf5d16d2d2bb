#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace spinchain {

inline constexpr int kMinSpins = 2;
inline constexpr int kMaxSpins = 14;

/// Computational basis pattern of an N-spin ring. Bit i is site i; a set bit
/// is spin up (sigma_z = +1), a clear bit spin down (sigma_z = -1).
using BasisState = std::uint32_t;

struct ModelParams {
  int n_spins = 2;
  double coupling = 1.0;  // J > 0 antiferromagnet, J < 0 ferromagnet
  double field = 0.0;     // B
  double kT = 0.0;        // temperature in energy units (k = 1)

  /// Throws ParameterError unless 2 <= N <= 14, kT >= 0 and all values finite.
  void validate() const;
};

/// All N-bit patterns with a fixed number of up spins, ascending.
///
/// Ascending numeric order of fixed-popcount patterns coincides with
/// colexicographic order of their set-bit positions, so `index_of` is the
/// combinatorial rank sum_t C(p_t, t+1) and needs no lookup table.
class SectorBasis {
 public:
  SectorBasis(int n_spins, int n_up);

  int n_spins() const { return n_spins_; }
  int n_up() const { return n_up_; }
  std::size_t size() const { return states_.size(); }
  std::span<const BasisState> states() const { return states_; }
  BasisState operator[](std::size_t k) const { return states_[k]; }

  /// Position of `pattern` in states(), or nullopt if it is not in this sector.
  std::optional<std::size_t> index_of(BasisState pattern) const;

 private:
  int n_spins_;
  int n_up_;
  std::vector<BasisState> states_;
};

SectorBasis enumerate_sector(int n_spins, int n_up);

/// Eigenvalue of sum_i sigma_z^i on the sector: 2 n_up - N.
int zeeman_eigenvalue(int n_spins, int n_up);

std::uint64_t binomial(int n, int k);

}  // namespace spinchain
