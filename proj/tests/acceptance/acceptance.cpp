// Acceptance suite: one PASS/FAIL line per criterion.
//   spinchain_acceptance                 run all criteria
//   spinchain_acceptance --criterion K   run criterion K only

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "spinchain/spinchain.hpp"

using namespace spinchain;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

PairMeasures measures_at(const ChainSpectrum& spectrum, double field, double kT, SitePair pair) {
  const auto ensemble = gibbs_weights(spectrum, field, kT);
  return compute_pair_measures(pair_rdm(ensemble, pair.i, pair.j));
}

double eof_at(const ChainSpectrum& spectrum, double field, double kT, SitePair pair = {0, 1}) {
  return measures_at(spectrum, field, kT, pair).eof;
}

std::vector<double> half_steps(double lo, double hi) {
  std::vector<double> out;
  for (int k = 0; lo + 0.5 * k <= hi + 1e-12; ++k) out.push_back(lo + 0.5 * k);
  return out;
}

// Radical-inverse sequence; deterministic sample points without a seed.
double halton(int index, int base) {
  double f = 1.0;
  double r = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

Outcome criterion_1() {
  double worst = 0.0;
  std::string where;
  const auto temperatures = geometric_samples(0.05, 10.0, 20);
  for (double j : {0.5, 1.0, 2.0}) {
    const auto spectrum = diagonalize_chain(2, j);
    for (double b : half_steps(0.0, 6.0)) {
      for (double kT : temperatures) {
        const auto ensemble = gibbs_weights(spectrum, b, kT);
        const double numeric = concurrence(pair_rdm(ensemble, 0, 1)).concurrence;
        const double exact = analytic_two_qubit_concurrence(j, b, kT);
        const double diff = std::abs(numeric - exact);
        if (diff > worst) {
          worst = diff;
          where = fmt("J=%g B=%g kT=%.4g", j, b, kT);
        }
      }
    }
  }
  return {worst <= 1e-10, fmt("max |C_numeric - C_analytic| = %.3e (tol 1e-10)", worst) +
                              (where.empty() ? "" : " at " + where)};
}

Outcome criterion_2() {
  const auto spectrum = diagonalize_chain(2, 1.0);
  Outcome o;
  for (double b : {0.0, 2.0, 4.0}) {
    const double below = measures_at(spectrum, b, 7.0, {0, 1}).concurrence;
    const double above = measures_at(spectrum, b, 7.3, {0, 1}).concurrence;
    o.pass = o.pass && below > 0.0 && above == 0.0;
    o.detail += fmt("B=%g: C(7.0)=%.3e C(7.3)=%g; ", b, below, above);
  }
  o.detail += fmt("kT_c = %.6f", critical_temperature_two_qubit(1.0));
  return o;
}

Outcome criterion_3() {
  const auto spectrum = diagonalize_chain(2, 1.0);
  const double below = eof_at(spectrum, 3.9, 1e-3);
  const double above = eof_at(spectrum, 4.1, 1e-3);
  return {below > 0.99 && above < 1e-3, fmt("E(3.9)=%.6f (>0.99) E(4.1)=%.3e (<1e-3)", below, above)};
}

Outcome criterion_4() {
  Outcome o;
  double worst = 0.0;
  for (int n = 2; n <= 13; ++n) {
    const double numeric = magnetization_staircase(n, 1.0).b_c_numeric;
    const double closed = critical_field_closed_form(n, 1.0);
    worst = std::max(worst, std::abs(numeric - closed));
    if (std::abs(numeric - closed) >= 1e-9) o.pass = false;
    if (n % 2 == 0 && std::abs(numeric - 4.0) >= 1e-9) o.pass = false;
    if (n % 2 == 1) o.detail += fmt("N=%d %.9f; ", n, numeric);
  }
  o.detail += fmt("max |numeric - closed form| = %.3e over N=2..13", worst);
  return o;
}

Outcome criterion_5() {
  const auto result = magnetization_staircase(6, 1.0);
  const double b_e = result.b_e.value_or(-1.0);
  return {b_e >= 3.23 && b_e <= 3.25, fmt("B_E(N=6) = %.6f, expected [3.23, 3.25]", b_e)};
}

Outcome criterion_6() {
  const auto spectrum = diagonalize_chain(6, 1.0);
  const int at_2 = entanglement_length(spectrum, 2.0, 0.1).length;
  const int at_35 = entanglement_length(spectrum, 3.5, 0.1).length;
  const int at_6 = entanglement_length(spectrum, 6.0, 0.1).length;
  return {at_2 == 1 && at_35 == 3 && at_6 == 0,
          fmt("l_E(B=2)=%d (1) l_E(B=3.5)=%d (3) l_E(B=6)=%d (0)", at_2, at_35, at_6)};
}

Outcome criterion_7() {
  Outcome o;
  for (int n = 4; n <= 10; ++n) {
    const auto staircase = magnetization_staircase(n, 1.0);
    const double field = (staircase.b_e.value_or(0.0) + staircase.b_c_numeric) / 2.0;
    const auto spectrum = diagonalize_chain(n, 1.0);
    const auto length = entanglement_length(spectrum, field, 0.01);
    const double target = 2.0 / n;
    double worst = 0.0;
    for (double c : length.concurrence) worst = std::max(worst, std::abs(c - target));
    const bool ok = worst <= 0.02;
    o.pass = o.pass && ok;
    o.detail += fmt("N=%d %s(dev %.4f) ", n, ok ? "ok" : "FAIL", worst);
    if (!ok) {
      o.detail += "[C(d)=";
      for (double c : length.concurrence) o.detail += fmt("%.4f,", c);
      o.detail.back() = ']';
      o.detail += ' ';
    }
  }
  return o;
}

Outcome criterion_8() {
  double worst = 0.0;
  std::size_t points = 0;
  for (int n = 2; n <= 10; ++n) {
    const auto spectrum = diagonalize_chain(n, -1.0);
    for (double b : half_steps(0.0, 6.0)) {
      for (double kT : half_steps(0.5, 10.0)) {
        const auto ensemble = gibbs_weights(spectrum, b, kT);
        for (int d = 1; d <= n / 2; ++d) {
          worst = std::max(worst, concurrence(pair_rdm(ensemble, 0, d)).concurrence);
          ++points;
        }
      }
    }
  }
  return {worst == 0.0, fmt("max C = %g over %zu (N, B, kT, d) points", worst, points)};
}

Outcome criterion_9() {
  const auto two = diagonalize_chain(2, 1.0);
  const double cold = eof_at(two, 4.6, 0.01);
  double best = 0.0;
  for (double kT : linear_samples(0.01, 3.0, 300)) best = std::max(best, eof_at(two, 4.6, kT));

  const auto six = diagonalize_chain(6, 1.0);
  const auto temperatures = geometric_samples(0.01, 1.0, 41);
  std::vector<double> e6;
  for (double kT : temperatures) e6.push_back(eof_at(six, 4.2, kT));
  const double six_peak = *std::max_element(e6.begin(), e6.end());
  // Rising start: E grows monotonically from the coldest point until it first turns positive.
  bool rising = e6.front() < 1e-6 && six_peak > e6.front();
  for (std::size_t k = 1; k < e6.size() && e6[k - 1] < 1e-6; ++k) rising = rising && e6[k] >= e6[k - 1];

  return {cold < 1e-6 && best > 0.05 && rising,
          fmt("N=2 B=4.6: E(0.01)=%.3e max E(kT<=3)=%.4f (>0.05); N=6 B=4.2: E(0.01)=%.3e "
              "max E(kT<=1)=%.4f",
              cold, best, e6.front(), six_peak)};
}

Outcome criterion_10() {
  double worst = 0.0;
  for (int n : {2, 6}) {
    for (double j : {0.5, 1.0, 2.0}) {
      const auto spectrum = diagonalize_chain(n, j);
      ScanGrid grid;
      grid.n_spins = n;
      grid.coupling = j;
      grid.fields = linear_samples(0.0, 6.0, 13);
      grid.temperatures = geometric_samples(0.05, 10.0, 20);
      for (int d = 1; d <= n / 2; ++d) {
        grid.pairs = {SitePair{0, d}};
        worst = std::max(worst, lipschitz_check(grid, spectrum, {0, d}).max_ratio);
      }
    }
  }
  return {worst <= 1.0 + 1e-6, fmt("max kT |dE|/|dB| = %.6f (<= 1 + 1e-6)", worst)};
}

Outcome criterion_11() {
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const double j = n % 2 == 0 ? 1.0 : -1.0;
    const auto spectrum = diagonalize_chain(n, j);
    for (int s = 1; s <= 30; ++s) {
      const double field = 6.0 * halton(s, 2);
      const double kT = 0.01 * std::pow(1000.0, halton(s, 3));
      const auto ensemble = gibbs_weights(spectrum, field, kT);
      const auto full = oracle::thermal_state(n, j, field, kT);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (a == b) continue;
          const auto ours = pair_rdm(ensemble, a, b).matrix();
          const auto ref = oracle::partial_trace_pair(full, n, a, b);
          worst = std::max(worst, (ours - ref).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  return {worst <= 1e-9, fmt("max entrywise |rho - rho_oracle| = %.3e (tol 1e-9)", worst)};
}

Outcome criterion_12() {
  std::vector<ChainSpectrum> spectra;
  for (int n = 5; n <= 10; ++n) spectra.push_back(diagonalize_chain(n, 1.0));
  const auto e = [&](int n, double kT) { return eof_at(spectra[static_cast<std::size_t>(n - 5)], 4.2, kT); };
  double sup_910 = 0.0;
  double sup_56 = 0.0;
  for (double kT : linear_samples(0.5, 4.0, 71)) {
    sup_910 = std::max(sup_910, std::abs(e(9, kT) - e(10, kT)));
    sup_56 = std::max(sup_56, std::abs(e(5, kT) - e(6, kT)));
  }
  const std::vector<int> order = {6, 8, 10, 9, 7, 5};
  bool ordered = true;
  std::string ladder;
  for (std::size_t k = 0; k < order.size(); ++k) {
    ladder += fmt("E%d=%.5f ", order[k], e(order[k], 1.0));
    if (k > 0) ordered = ordered && e(order[k - 1], 1.0) > e(order[k], 1.0);
  }
  return {sup_910 < sup_56 && ordered,
          fmt("sup|E9-E10|=%.5f < sup|E5-E6|=%.5f; kT=1: ", sup_910, sup_56) + ladder};
}

Outcome criterion_13() {
  const auto spectrum = diagonalize_chain(2, 1.0);
  const double singlet = measures_at(spectrum, 0.0, 0.5, {0, 1}).chsh_m;
  const double polarized = measures_at(spectrum, 6.0, 0.01, {0, 1}).chsh_m;
  return {singlet > 1.0 && polarized <= 1.0 + 1e-9,
          fmt("M(B=0, kT=0.5)=%.6f (>1) M(B=6, kT=0.01)=%.12f (<=1+1e-9)", singlet, polarized)};
}

Outcome criterion_14() {
  const auto spectrum = diagonalize_chain(10, -1.0);
  const double base = measures_at(spectrum, 4.2, 0.05, {0, 1}).mutual_information;
  double best = base;
  double best_kT = 0.05;
  for (double kT : geometric_samples(0.01, 10.0, 121)) {
    const double value = measures_at(spectrum, 4.2, kT, {0, 1}).mutual_information;
    if (value > best) {
      best = value;
      best_kT = kT;
    }
  }
  return {best - base >= 1e-4,
          fmt("I(0.05)=%.3e, max I=%.5f at kT=%.3f (gain %.3e, need >= 1e-4)", base, best, best_kT,
              best - base)};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Outcome criterion_15() {
#ifdef SPINCHAIN_CLI_PATH
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "spinchain_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"a", "1"}, {"b", "1"}, {"c", "3"}};
  for (const auto& [dir, threads] : runs) {
    for (int id = 1; id <= kFigureCount; ++id) {
      const std::string command = "SPINCHAIN_THREADS=" + threads + " \"" SPINCHAIN_CLI_PATH
                                  "\" figure --id " + std::to_string(id) + " --outdir \"" +
                                  (root / dir).string() + "\" >/dev/null";
      const int status = std::system(command.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        return {false, "command failed: " + command};
      }
    }
  }
  Outcome o;
  std::size_t bytes = 0;
  for (int id = 1; id <= kFigureCount; ++id) {
    const std::string name = "fig" + std::to_string(id) + ".csv";
    const auto reference = slurp(root / "a" / name);
    bytes += reference.size();
    const bool same = !reference.empty() && reference == slurp(root / "b" / name) &&
                      reference == slurp(root / "c" / name);
    if (!same) {
      o.pass = false;
      o.detail += name + " differs; ";
    }
  }
  fs::remove_all(root);
  o.detail += fmt("figures 1-5, three runs (threads 1, 1, 3), %zu bytes per run", bytes);
  return o;
#else
  return {false, "CLI not built"};
#endif
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      criterion_1,  criterion_2,  criterion_3,  criterion_4,  criterion_5,
      criterion_6,  criterion_7,  criterion_8,  criterion_9,  criterion_10,
      criterion_11, criterion_12, criterion_13, criterion_14, criterion_15};

  int only = 0;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--criterion" && a + 1 < argc) {
      only = std::atoi(argv[++a]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion 1..%zu]\n", argv[0], criteria.size());
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "criterion must lie in 1..%zu\n", criteria.size());
    return 2;
  }

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only != 0 && static_cast<int>(k) + 1 != only) continue;
    Outcome outcome;
    try {
      outcome = criteria[k]();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2zu: %s  %s\n", k + 1, outcome.pass ? "PASS" : "FAIL",
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
