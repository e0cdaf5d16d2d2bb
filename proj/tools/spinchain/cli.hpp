#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinchain/figures.hpp"

namespace spinchain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kScanCsvHeader = "B,kT,i,j,d,C,E,I,M";
inline constexpr const char* kFigureCsvHeader = "N,J,B,kT,i,j,d,C,E,I,M";

/// Sample axis written as MIN:MAX:STEPS[:geom], STEPS being the point count.
struct RangeSpec {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
  bool geometric = false;

  std::vector<double> samples() const;
};

/// ParameterError on malformed text, STEPS < 1, MIN > MAX, or a one-point
/// range whose ends differ.
RangeSpec parse_range(const std::string& text);

/// "I,J" site pair. ParameterError on malformed text.
SitePair parse_pair(const std::string& text);

/// 12 significant digits; negative zero prints as 0.
std::string format_number(double value);

std::string scan_csv(const std::vector<ScanRow>& rows);
std::string figure_csv(const std::vector<FigureRow>& rows);
nlohmann::json scan_json(const std::vector<ScanRow>& rows);

/// Plot of one measure over a scan: heatmap for a single pair on a full
/// (B, kT) grid, otherwise one polyline per pair and fixed axis value.
PlotSpec scan_plot(const ScanGrid& grid, const std::vector<ScanRow>& rows, char measure);

/// Worker count: hardware concurrency capped by SPINCHAIN_THREADS.
/// ParameterError if the variable is set but not a positive integer.
int thread_count_from_env();

/// Expands `--config PATH` into flags placed ahead of the explicit ones, so
/// explicit flags win. ParameterError if the file cannot be read or parsed.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

/// Runs one command; `args` excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinchain::cli
