#pragma once

#include <optional>
#include <vector>

#include "spinchain/pair_measures.hpp"
#include "spinchain/thermal.hpp"

namespace spinchain {

/// Concurrence above which a pair counts as entangled for l_E.
inline constexpr double kEntanglementTol = 1e-6;
/// Lipschitz ratios above 1 + this are reported as exceeding the bound.
inline constexpr double kLipschitzSlack = 1e-6;

struct ScanGrid {
  int n_spins = 2;
  double coupling = 1.0;
  std::vector<double> fields;        // ascending
  std::vector<double> temperatures;  // ascending, kT >= 0
  std::vector<SitePair> pairs;

  /// ParameterError on empty, unsorted or non-finite axes and invalid pairs.
  void validate() const;
};

/// Representative pairs (0, d) for the requested ring separations.
std::vector<SitePair> pairs_for_separations(int n_spins, const std::vector<int>& separations);

/// Points spaced evenly (linear) or by constant ratio (geometric), inclusive.
std::vector<double> linear_samples(double lo, double hi, int count);
std::vector<double> geometric_samples(double lo, double hi, int count);

struct ScanRow {
  double field;
  double kT;
  int i;
  int j;
  int separation;
  PairMeasures measures;
};

struct ScanOptions {
  int threads = 1;
};

/// One row per (B, kT, pair), B-major then kT then pair. Row content and
/// order do not depend on the thread count. Errors are rethrown with the
/// offending grid point in the message, keeping their type.
std::vector<ScanRow> scan_pair_measures(const ScanGrid& grid, const ChainSpectrum& spectrum,
                                        const ScanOptions& options = {});
std::vector<ScanRow> scan_pair_measures(const ScanGrid& grid, const ScanOptions& options = {});

struct LevelCrossing {
  double field;
  int from_n_up;
  int to_n_up;
};

struct StaircaseResult {
  std::vector<double> sector_ground_energies;  // exchange part, indexed by n_up
  int initial_n_up = 0;                        // ground sector just above B = 0
  std::vector<LevelCrossing> crossings;        // field ascending, n_up descending
  std::optional<double> b_e;                   // field where n_up = 1 becomes ground
  double b_c_numeric = 0.0;                    // field where n_up = 0 becomes ground
};

/// Ground-sector sequence as B grows. Sector energies are linear in B with
/// slope 2 n_up - N, so each crossing is exact:
/// B = (eps_{k'} - eps_k) / (2 (k - k')).
StaircaseResult magnetization_staircase(int n_spins, double coupling);

/// Same, from precomputed per-sector exchange ground energies.
StaircaseResult staircase_from_ground_energies(int n_spins, std::vector<double> ground_energies);

struct EntanglementLengthResult {
  std::vector<double> concurrence;  // index d - 1, d = 1..floor(N/2)
  int length = 0;                   // largest d with C(d) > kEntanglementTol, 0 if none
};

EntanglementLengthResult entanglement_length(const ModelParams& params);
EntanglementLengthResult entanglement_length(const ChainSpectrum& spectrum, double field,
                                             double kT);

struct LipschitzReport {
  std::vector<double> per_temperature;  // max kT |dE| / |dB| for each kT row
  double max_ratio = 0.0;
  bool exceeds = false;  // max_ratio > 1 + kLipschitzSlack
};

/// Checks |E(B2) - E(B1)| <= |B2 - B1| / kT over adjacent field samples.
LipschitzReport lipschitz_check(const ScanGrid& grid, SitePair pair,
                                const ScanOptions& options = {});
LipschitzReport lipschitz_check(const ScanGrid& grid, const ChainSpectrum& spectrum,
                                SitePair pair, const ScanOptions& options = {});

}  // namespace spinchain
