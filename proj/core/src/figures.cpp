#include "spinchain/figures.hpp"

#include <cmath>
#include <string>

#include "spinchain/errors.hpp"

namespace spinchain {

namespace {

std::vector<double> field_axis() {
  const int steps = static_cast<int>(std::lround(kFigureFieldMax / kFigureFieldStep)) + 1;
  return linear_samples(0.0, kFigureFieldMax, steps);
}

std::vector<double> kt_axis() { return geometric_samples(kFigureKtMin, kFigureKtMax, kFigureKtPoints); }

struct Curve {
  int n_spins;
  double coupling;
  std::vector<double> fields;
  std::vector<double> temperatures;
  SitePair pair;
};

// Scans one (N, J, pair) curve and appends its rows.
std::vector<ScanRow> run_curve(const Curve& c, const ScanOptions& options,
                               std::vector<FigureRow>& rows) {
  const ScanGrid grid{c.n_spins, c.coupling, c.fields, c.temperatures, {c.pair}};
  auto scan = scan_pair_measures(grid, options);
  for (const ScanRow& r : scan) rows.push_back({c.n_spins, c.coupling, r});
  return scan;
}

PlotSeries series_of(std::string label, const std::vector<ScanRow>& scan, bool x_is_field,
                     double PairMeasures::*metric) {
  PlotSeries s{std::move(label), {}, {}};
  for (const ScanRow& r : scan) {
    s.x.push_back(x_is_field ? r.field : r.kT);
    s.y.push_back(r.measures.*metric);
  }
  return s;
}

FigureDataset field_temperature_surface(const ScanOptions& options) {
  FigureDataset fig;
  fig.id = 1;
  const Curve c{2, 1.0, field_axis(), kt_axis(), {0, 1}};
  const auto scan = run_curve(c, options, fig.rows);
  auto& p = fig.plot;
  p.kind = PlotSpec::Kind::heatmap;
  p.title = "Two-spin entanglement E(B, kT), J = 1";
  p.x_label = "B";
  p.y_label = "kT";
  p.z_label = "E";
  p.log_y = true;
  p.x = c.fields;
  p.y = c.temperatures;
  p.z.assign(p.x.size() * p.y.size(), 0.0);
  // Rows are B-major; the heatmap wants kT rows.
  for (std::size_t b = 0; b < p.x.size(); ++b) {
    for (std::size_t t = 0; t < p.y.size(); ++t) {
      p.z[t * p.x.size() + b] = scan[b * p.y.size() + t].measures.eof;
    }
  }
  return fig;
}

FigureDataset neighbor_fields(const ScanOptions& options) {
  FigureDataset fig;
  fig.id = 2;
  fig.plot.title = "E vs B, N = 6, kT = 0.1, J = 1";
  fig.plot.x_label = "B";
  fig.plot.y_label = "E";
  for (int d = 1; d <= 3; ++d) {
    const auto scan = run_curve({6, 1.0, field_axis(), {0.1}, {0, d}}, options, fig.rows);
    fig.plot.series.push_back(series_of("d=" + std::to_string(d), scan, true, &PairMeasures::eof));
  }
  return fig;
}

FigureDataset next_nearest_sizes(const ScanOptions& options) {
  FigureDataset fig;
  fig.id = 3;
  fig.plot.title = "Next-nearest-neighbor E vs B, kT = 0.1, J = 1";
  fig.plot.x_label = "B";
  fig.plot.y_label = "E";
  for (int n : {6, 8, 10}) {
    const auto scan = run_curve({n, 1.0, field_axis(), {0.1}, {0, 2}}, options, fig.rows);
    fig.plot.series.push_back(series_of("N=" + std::to_string(n), scan, true, &PairMeasures::eof));
  }
  return fig;
}

FigureDataset nearest_temperatures(const ScanOptions& options) {
  FigureDataset fig;
  fig.id = 4;
  fig.plot.title = "Nearest-neighbor E vs kT, B = 4.2, J = 1";
  fig.plot.x_label = "kT";
  fig.plot.y_label = "E";
  fig.plot.log_x = true;
  for (int n : {6, 8, 10, 9, 7, 5}) {
    const auto scan = run_curve({n, 1.0, {4.2}, kt_axis(), {0, 1}}, options, fig.rows);
    fig.plot.series.push_back(series_of("N=" + std::to_string(n), scan, false, &PairMeasures::eof));
  }
  return fig;
}

FigureDataset mutual_information_curves(const ScanOptions& options) {
  FigureDataset fig;
  fig.id = 5;
  fig.plot.title = "Nearest-neighbor I and E vs kT, N = 10, B = 4.2, |J| = 1";
  fig.plot.x_label = "kT";
  fig.plot.y_label = "I, E";
  fig.plot.log_x = true;
  const auto af = run_curve({10, 1.0, {4.2}, kt_axis(), {0, 1}}, options, fig.rows);
  const auto fm = run_curve({10, -1.0, {4.2}, kt_axis(), {0, 1}}, options, fig.rows);
  fig.plot.series.push_back(series_of("AF, I", af, false, &PairMeasures::mutual_information));
  fig.plot.series.push_back(series_of("F, I", fm, false, &PairMeasures::mutual_information));
  fig.plot.series.push_back(series_of("AF, E", af, false, &PairMeasures::eof));
  return fig;
}

}  // namespace

FigureDataset figure_dataset(int id, const ScanOptions& options) {
  switch (id) {
    case 1: return field_temperature_surface(options);
    case 2: return neighbor_fields(options);
    case 3: return next_nearest_sizes(options);
    case 4: return nearest_temperatures(options);
    case 5: return mutual_information_curves(options);
    default:
      throw ParameterError("unknown figure id " + std::to_string(id) + " (expected 1..5)");
  }
}

}  // namespace spinchain
