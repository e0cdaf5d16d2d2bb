#pragma once

#include <string>
#include <vector>

#include "spinchain/scans.hpp"

namespace spinchain {

inline constexpr int kFigureCount = 5;
inline constexpr double kFigureFieldStep = 0.05;
inline constexpr double kFigureFieldMax = 6.0;
inline constexpr double kFigureKtMin = 0.01;
inline constexpr double kFigureKtMax = 10.0;
inline constexpr int kFigureKtPoints = 120;

struct FigureRow {
  int n_spins;
  double coupling;
  ScanRow scan;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  enum class Kind { lines, heatmap };
  Kind kind = Kind::lines;
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;  // Kind::lines
  // Kind::heatmap: value(x_k, y_m) stored at z[m * x.size() + k].
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
  std::string z_label;
};

struct FigureDataset {
  int id = 0;
  std::vector<FigureRow> rows;
  PlotSpec plot;
};

/// Dataset and plot payload for figure `id` (1..5) at the default grid
/// resolution. ParameterError for any other id.
FigureDataset figure_dataset(int id, const ScanOptions& options = {});

}  // namespace spinchain
