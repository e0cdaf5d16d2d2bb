#include <benchmark/benchmark.h>

#include "spinchain/spinchain.hpp"

namespace {

using namespace spinchain;

void BM_SectorHamiltonian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams params{n, 1.0, 0.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_sector_hamiltonian(params, n / 2));
  }
}
BENCHMARK(BM_SectorHamiltonian)->DenseRange(6, 12, 2);

void BM_DiagonalizeChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(diagonalize_chain(n, 1.0));
  }
}
BENCHMARK(BM_DiagonalizeChain)->DenseRange(4, 12, 2)->Unit(benchmark::kMillisecond);

// Low kT prunes most eigenstates, high kT visits all of them.
void BM_PairRdm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double kT = static_cast<double>(state.range(1)) / 100.0;
  const auto spectrum = diagonalize_chain(n, 1.0);
  const auto ensemble = gibbs_weights(spectrum, 3.5, kT);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_rdm(ensemble, 0, n / 2));
  }
}
BENCHMARK(BM_PairRdm)->ArgsProduct({{6, 8, 10}, {1, 100}});

void BM_PairMeasures(benchmark::State& state) {
  const auto spectrum = diagonalize_chain(6, 1.0);
  const auto rho = pair_rdm(gibbs_weights(spectrum, 3.5, 0.1), 0, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_pair_measures(rho));
  }
}
BENCHMARK(BM_PairMeasures);

void BM_Concurrence(benchmark::State& state) {
  const auto spectrum = diagonalize_chain(2, 1.0);
  const auto rho = pair_rdm(gibbs_weights(spectrum, 2.0, 1.0), 0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(concurrence(rho));
  }
}
BENCHMARK(BM_Concurrence);

void BM_MagnetizationStaircase(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(magnetization_staircase(n, 1.0));
  }
}
BENCHMARK(BM_MagnetizationStaircase)->Arg(8)->Arg(13)->Unit(benchmark::kMillisecond);

// One figure-sized scan: N=6, 121 fields, 40 temperatures, three separations.
void BM_ScanGrid(benchmark::State& state) {
  ScanGrid grid;
  grid.n_spins = 6;
  grid.coupling = 1.0;
  grid.fields = linear_samples(0.0, 6.0, 121);
  grid.temperatures = geometric_samples(0.01, 10.0, 40);
  grid.pairs = pairs_for_separations(6, {1, 2, 3});
  const auto spectrum = diagonalize_chain(6, 1.0);
  const ScanOptions options{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_pair_measures(grid, spectrum, options));
  }
  state.SetItemsProcessed(state.iterations() * 121 * 40 * 3);
}
BENCHMARK(BM_ScanGrid)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
