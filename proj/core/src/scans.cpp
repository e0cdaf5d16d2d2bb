#include "spinchain/scans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "spinchain/errors.hpp"
#include "spinchain/hamiltonian.hpp"
#include "spinchain/parallel.hpp"

namespace spinchain {

namespace {

// Relative tolerance for treating two sector energies (or crossing fields) as equal.
constexpr double kCrossingTieTol = 1e-12;

void require_ascending(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw ParameterError(std::string(name) + " axis is empty");
  for (std::size_t k = 0; k < axis.size(); ++k) {
    if (!std::isfinite(axis[k])) throw ParameterError(std::string(name) + " axis has non-finite value");
    if (k > 0 && !(axis[k] > axis[k - 1])) {
      throw ParameterError(std::string(name) + " axis must be strictly ascending");
    }
  }
}

std::string describe_point(double field, double kT, SitePair pair) {
  std::ostringstream os;
  os.precision(12);
  os << "at B=" << field << ", kT=" << kT << ", pair (" << pair.i << "," << pair.j << "): ";
  return os.str();
}

[[noreturn]] void rethrow_located(const std::string& where) {
  try {
    throw;
  } catch (const ParameterError& e) {
    throw ParameterError(where + e.what());
  } catch (const DomainError& e) {
    throw DomainError(where + e.what());
  } catch (const StateValidityError& e) {
    throw StateValidityError(where + e.what());
  } catch (const ContractError& e) {
    throw ContractError(where + e.what());
  } catch (const Error& e) {
    throw NumericError(where + e.what());
  }
}

}  // namespace

void ScanGrid::validate() const {
  ModelParams{n_spins, coupling, 0.0, 0.0}.validate();
  require_ascending(fields, "B");
  require_ascending(temperatures, "kT");
  if (temperatures.front() < 0.0) throw ParameterError("kT samples must be >= 0");
  if (pairs.empty()) throw ParameterError("no site pairs requested");
  for (const SitePair& p : pairs) {
    if (p.i < 0 || p.j < 0 || p.i >= n_spins || p.j >= n_spins || p.i == p.j) {
      throw ParameterError("invalid site pair (" + std::to_string(p.i) + "," +
                           std::to_string(p.j) + ") for N = " + std::to_string(n_spins));
    }
  }
}

std::vector<SitePair> pairs_for_separations(int n_spins, const std::vector<int>& separations) {
  std::vector<SitePair> out;
  for (int d : separations) {
    if (d < 1 || d > n_spins / 2) {
      throw ParameterError("separation " + std::to_string(d) + " outside [1, " +
                           std::to_string(n_spins / 2) + "]");
    }
    out.push_back({0, d});
  }
  return out;
}

std::vector<double> linear_samples(double lo, double hi, int count) {
  if (count < 1) throw ParameterError("sample count must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (count - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<double> geometric_samples(double lo, double hi, int count) {
  if (count < 1) throw ParameterError("sample count must be >= 1");
  if (!(lo > 0.0) || !(hi > 0.0)) throw ParameterError("geometric samples need positive bounds");
  if (count == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double ratio = std::log(hi / lo);
  for (int k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = lo * std::exp(ratio * k / (count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<ScanRow> scan_pair_measures(const ScanGrid& grid, const ChainSpectrum& spectrum,
                                        const ScanOptions& options) {
  grid.validate();
  if (spectrum.n_spins() != grid.n_spins || spectrum.coupling() != grid.coupling) {
    throw ContractError("spectrum does not belong to the scanned (N, J)");
  }
  const std::size_t n_pairs = grid.pairs.size();
  const std::size_t n_points = grid.fields.size() * grid.temperatures.size();
  std::vector<ScanRow> rows(n_points * n_pairs);

  parallel_for(n_points, options.threads, [&](std::size_t point) {
    const double field = grid.fields[point / grid.temperatures.size()];
    const double kT = grid.temperatures[point % grid.temperatures.size()];
    std::size_t p = 0;
    try {
      const GibbsEnsemble ensemble = gibbs_weights(spectrum, field, kT);
      for (; p < n_pairs; ++p) {
        const SitePair pair = grid.pairs[p];
        const PairDensityMatrix rho = pair_rdm(ensemble, pair.i, pair.j);
        rows[point * n_pairs + p] = {field, kT, pair.i, pair.j, rho.separation(),
                                     compute_pair_measures(rho)};
      }
    } catch (const Error&) {
      rethrow_located(describe_point(field, kT, grid.pairs[std::min(p, n_pairs - 1)]));
    }
  });
  return rows;
}

std::vector<ScanRow> scan_pair_measures(const ScanGrid& grid, const ScanOptions& options) {
  grid.validate();
  const ChainSpectrum spectrum = diagonalize_chain(grid.n_spins, grid.coupling, options.threads);
  return scan_pair_measures(grid, spectrum, options);
}

StaircaseResult staircase_from_ground_energies(int n_spins, std::vector<double> ground_energies) {
  if (ground_energies.size() != static_cast<std::size_t>(n_spins) + 1) {
    throw ContractError("need one ground energy per sector");
  }
  StaircaseResult out;
  out.sector_ground_energies = std::move(ground_energies);
  const auto& eps = out.sector_ground_energies;
  double scale = 1.0;
  for (double e : eps) scale = std::max(scale, std::abs(e));

  // Just above B = 0 the lowest-slope sector among the B = 0 minima wins.
  int k = 0;
  for (int q = 1; q <= n_spins; ++q) {
    if (eps[static_cast<std::size_t>(q)] < eps[static_cast<std::size_t>(k)] - kCrossingTieTol * scale) {
      k = q;
    }
  }
  out.initial_n_up = k;
  if (k == 1) out.b_e = 0.0;

  double field = 0.0;
  while (k > 0) {
    // Next sector to undercut the current one; ties go to the larger jump.
    double best_field = std::numeric_limits<double>::infinity();
    int best = -1;
    for (int q = 0; q < k; ++q) {
      const double crossing = (eps[static_cast<std::size_t>(q)] - eps[static_cast<std::size_t>(k)]) /
                              (2.0 * (k - q));
      if (best < 0 || crossing < best_field - kCrossingTieTol * scale) {
        best_field = crossing;
        best = q;
      }
    }
    field = std::max(field, best_field);
    out.crossings.push_back({field, k, best});
    k = best;
    if (k == 1) out.b_e = field;
  }
  out.b_c_numeric = out.crossings.empty() ? 0.0 : out.crossings.back().field;
  return out;
}

StaircaseResult magnetization_staircase(int n_spins, double coupling) {
  if (!(coupling > 0.0)) throw ParameterError("magnetization staircase needs J > 0");
  return staircase_from_ground_energies(n_spins, sector_ground_energies(n_spins, coupling));
}

EntanglementLengthResult entanglement_length(const ChainSpectrum& spectrum, double field,
                                             double kT) {
  const int n = spectrum.n_spins();
  const GibbsEnsemble ensemble = gibbs_weights(spectrum, field, kT);
  EntanglementLengthResult out;
  for (int d = 1; d <= n / 2; ++d) {
    const double c = concurrence(pair_rdm(ensemble, 0, d)).concurrence;
    out.concurrence.push_back(c);
    if (c > kEntanglementTol) out.length = d;
  }
  return out;
}

EntanglementLengthResult entanglement_length(const ModelParams& params) {
  params.validate();
  const ChainSpectrum spectrum = diagonalize_chain(params.n_spins, params.coupling);
  return entanglement_length(spectrum, params.field, params.kT);
}

LipschitzReport lipschitz_check(const ScanGrid& grid, const ChainSpectrum& spectrum,
                                SitePair pair, const ScanOptions& options) {
  ScanGrid g = grid;
  g.pairs = {pair};
  g.validate();
  if (g.fields.size() < 2) throw ParameterError("lipschitz_check needs at least two B samples");
  if (!(g.temperatures.front() > 0.0)) throw ParameterError("lipschitz_check needs kT > 0");

  const auto rows = scan_pair_measures(g, spectrum, options);
  const std::size_t n_t = g.temperatures.size();
  LipschitzReport report;
  report.per_temperature.assign(n_t, 0.0);
  for (std::size_t b = 1; b < g.fields.size(); ++b) {
    const double db = g.fields[b] - g.fields[b - 1];
    for (std::size_t t = 0; t < n_t; ++t) {
      const double de =
          std::abs(rows[b * n_t + t].measures.eof - rows[(b - 1) * n_t + t].measures.eof);
      report.per_temperature[t] = std::max(report.per_temperature[t], de / db * g.temperatures[t]);
    }
  }
  report.max_ratio = *std::max_element(report.per_temperature.begin(), report.per_temperature.end());
  report.exceeds = report.max_ratio > 1.0 + kLipschitzSlack;
  return report;
}

LipschitzReport lipschitz_check(const ScanGrid& grid, SitePair pair, const ScanOptions& options) {
  ScanGrid g = grid;
  g.pairs = {pair};
  g.validate();
  const ChainSpectrum spectrum = diagonalize_chain(g.n_spins, g.coupling, options.threads);
  return lipschitz_check(g, spectrum, pair, options);
}

}  // namespace spinchain
