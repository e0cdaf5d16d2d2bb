#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "spinchain/spinchain.hpp"
#include "svg.hpp"

namespace spinchain::cli {
namespace {

// Failures caused by the invocation rather than the computation.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream is(text);
  while (std::getline(is, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParameterError("invalid " + what + " '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParameterError("invalid " + what + " '" + text + "'");
  return value;
}

double measure_value(const PairMeasures& m, char measure) {
  switch (measure) {
    case 'C': return m.concurrence;
    case 'E': return m.eof;
    case 'I': return m.mutual_information;
    default: return m.chsh_m;
  }
}

std::string measure_label(char measure) {
  switch (measure) {
    case 'C': return "concurrence C";
    case 'E': return "entanglement of formation E";
    case 'I': return "mutual information I";
    default: return "CHSH quantity M";
  }
}

bool wide_range(const std::vector<double>& values) {
  return values.size() > 1 && values.front() > 0.0 && values.back() / values.front() >= 100.0;
}

void append_measures(std::string& line, const PairMeasures& m) {
  for (double v : {m.concurrence, m.eof, m.mutual_information, m.chsh_m}) {
    line += ',';
    line += format_number(v);
  }
}

void append_location(std::string& line, const ScanRow& row) {
  line += format_number(row.field);
  line += ',';
  line += format_number(row.kT);
  line += ',' + std::to_string(row.i) + ',' + std::to_string(row.j) + ',' +
          std::to_string(row.separation);
}

double json_number(double v) { return v == 0.0 ? 0.0 : v; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw UsageError("cannot open '" + path + "' for writing");
  os << content;
  os.flush();
  if (!os) throw UsageError("failed writing '" + path + "'");
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// Options shared by the chain commands.
struct ModelOptions {
  int n = 0;
  double j = 1.0;

  void add(CLI::App& app) {
    app.add_option("--n", n, "number of spins")->required();
    app.add_option("--j", j, "exchange coupling J (J > 0 antiferromagnet)")->capture_default_str();
  }
};

struct AxisOptions {
  std::string b_range;
  std::string kt_range;
  std::optional<double> b;
  std::optional<double> kt;

  void add(CLI::App& app) {
    auto* br = app.add_option("--b-range", b_range, "field axis MIN:MAX:STEPS");
    auto* bs = app.add_option("--b", b, "single field value");
    br->excludes(bs);
    auto* kr = app.add_option("--kt-range", kt_range, "temperature axis MIN:MAX:STEPS[:geom]");
    auto* ks = app.add_option("--kt", kt, "single temperature value");
    kr->excludes(ks);
  }

  static std::vector<double> axis(const std::string& range, const std::optional<double>& single,
                                  const char* name) {
    if (single) return {*single};
    if (range.empty()) throw ParameterError(std::string("one of --") + name + "-range or --" +
                                            name + " is required");
    return parse_range(range).samples();
  }
  std::vector<double> fields() const { return axis(b_range, b, "b"); }
  std::vector<double> temperatures() const { return axis(kt_range, kt, "kt"); }
};

struct PairOptions {
  std::vector<std::string> pairs;
  std::vector<int> separations;

  void add(CLI::App& app) {
    auto* p = app.add_option("--pair", pairs, "site pair I,J (repeatable)");
    auto* s = app.add_option("--sep", separations, "ring separation D (repeatable)")->delimiter(',');
    p->excludes(s);
  }

  std::vector<SitePair> resolve(int n_spins) const {
    if (!pairs.empty()) {
      std::vector<SitePair> out;
      for (const auto& text : pairs) out.push_back(parse_pair(text));
      return out;
    }
    if (!separations.empty()) return pairs_for_separations(n_spins, separations);
    throw ParameterError("one of --pair or --sep is required");
  }
};

}  // namespace

std::vector<double> RangeSpec::samples() const {
  return geometric ? geometric_samples(min, max, steps) : linear_samples(min, max, steps);
}

RangeSpec parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw ParameterError("range '" + text + "' must read MIN:MAX:STEPS[:geom]");
  }
  RangeSpec r;
  r.min = parse_double(parts[0], "range minimum");
  r.max = parse_double(parts[1], "range maximum");
  r.steps = parse_int(parts[2], "range step count");
  if (parts.size() == 4) {
    if (parts[3] != "geom" && parts[3] != "lin") {
      throw ParameterError("range scale must be 'geom' or 'lin', got '" + parts[3] + "'");
    }
    r.geometric = parts[3] == "geom";
  }
  if (r.steps < 1) throw ParameterError("range '" + text + "' needs STEPS >= 1");
  if (r.min > r.max) throw ParameterError("range '" + text + "' has MIN > MAX");
  if (r.steps == 1 && r.min != r.max) {
    throw ParameterError("range '" + text + "' has one point but MIN != MAX");
  }
  if (r.geometric && !(r.min > 0.0)) {
    throw ParameterError("geometric range '" + text + "' needs MIN > 0");
  }
  return r;
}

SitePair parse_pair(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw ParameterError("pair '" + text + "' must read I,J");
  return SitePair{parse_int(parts[0], "site index"), parse_int(parts[1], "site index")};
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = kScanCsvHeader;
  out += '\n';
  for (const auto& row : rows) {
    std::string line;
    append_location(line, row);
    append_measures(line, row.measures);
    out += line;
    out += '\n';
  }
  return out;
}

std::string figure_csv(const std::vector<FigureRow>& rows) {
  std::string out = kFigureCsvHeader;
  out += '\n';
  for (const auto& row : rows) {
    std::string line = std::to_string(row.n_spins) + ',' + format_number(row.coupling) + ',';
    append_location(line, row.scan);
    append_measures(line, row.scan.measures);
    out += line;
    out += '\n';
  }
  return out;
}

nlohmann::json scan_json(const std::vector<ScanRow>& rows) {
  auto out = nlohmann::json::array();
  for (const auto& row : rows) {
    out.push_back({{"B", json_number(row.field)},
                   {"kT", json_number(row.kT)},
                   {"i", row.i},
                   {"j", row.j},
                   {"d", row.separation},
                   {"C", json_number(row.measures.concurrence)},
                   {"E", json_number(row.measures.eof)},
                   {"I", json_number(row.measures.mutual_information)},
                   {"M", json_number(row.measures.chsh_m)}});
  }
  return out;
}

PlotSpec scan_plot(const ScanGrid& grid, const std::vector<ScanRow>& rows, char measure) {
  const std::size_t nf = grid.fields.size();
  const std::size_t nt = grid.temperatures.size();
  const std::size_t np = grid.pairs.size();
  const auto at = [&](std::size_t f, std::size_t t, std::size_t p) -> const ScanRow& {
    return rows[(f * nt + t) * np + p];
  };
  PlotSpec plot;
  plot.title = "N=" + std::to_string(grid.n_spins) + ", J=" + format_number(grid.coupling);
  if (np == 1 && nf > 1 && nt > 1) {
    plot.kind = PlotSpec::Kind::heatmap;
    plot.x_label = "B";
    plot.y_label = "kT";
    plot.log_y = wide_range(grid.temperatures);
    plot.x = grid.fields;
    plot.y = grid.temperatures;
    plot.z_label = std::string(1, measure);
    plot.z.resize(nf * nt);
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t f = 0; f < nf; ++f) {
        plot.z[t * nf + f] = measure_value(at(f, t, 0).measures, measure);
      }
    }
    return plot;
  }
  plot.y_label = measure_label(measure);
  const bool over_field = nf > 1 || nt == 1;
  plot.x_label = over_field ? "B" : "kT";
  plot.log_x = !over_field && wide_range(grid.temperatures);
  const std::size_t fixed_count = over_field ? nt : nf;
  for (std::size_t c = 0; c < fixed_count; ++c) {
    for (std::size_t p = 0; p < np; ++p) {
      PlotSeries series;
      const auto& pair = grid.pairs[p];
      series.label = (over_field ? "kT=" + format_number(grid.temperatures[c])
                                 : "B=" + format_number(grid.fields[c])) +
                     " (" + std::to_string(pair.i) + "," + std::to_string(pair.j) + ")";
      const std::size_t count = over_field ? nf : nt;
      for (std::size_t k = 0; k < count; ++k) {
        const auto& row = over_field ? at(k, c, p) : at(c, k, p);
        series.x.push_back(over_field ? row.field : row.kT);
        series.y.push_back(measure_value(row.measures, measure));
      }
      plot.series.push_back(std::move(series));
    }
  }
  return plot;
}

int thread_count_from_env() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("SPINCHAIN_THREADS");
  if (env == nullptr || *env == '\0') return static_cast<int>(hw);
  const int cap = parse_int(env, "SPINCHAIN_THREADS value");
  if (cap < 1) throw ParameterError("SPINCHAIN_THREADS must be a positive integer");
  return std::min(cap, static_cast<int>(hw));
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string config_path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw ParameterError("--config needs a path");
      config_path = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      config_path = args[k].substr(9);
    } else {
      rest.push_back(args[k]);
    }
  }
  if (config_path.empty()) return rest;

  std::ifstream is(config_path);
  if (!is) throw ParameterError("cannot read config '" + config_path + "'");
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("config '" + config_path + "' is not valid JSON: " + e.what());
  }
  if (!config.is_object()) throw ParameterError("config '" + config_path + "' must be an object");

  // Flags given explicitly win over the file, including their alternatives.
  static const std::map<std::string, std::string> kAlternative = {
      {"b", "b-range"}, {"b-range", "b"}, {"kt", "kt-range"},
      {"kt-range", "kt"}, {"pair", "sep"}, {"sep", "pair"}};
  std::set<std::string> explicit_flags;
  for (const auto& a : rest) {
    if (a.rfind("--", 0) != 0) continue;
    const std::string name = a.substr(2, a.find('=') == std::string::npos ? std::string::npos
                                                                          : a.find('=') - 2);
    explicit_flags.insert(name);
    if (auto it = kAlternative.find(name); it != kAlternative.end()) {
      explicit_flags.insert(it->second);
    }
  }

  const auto scalar = [](const nlohmann::json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  std::vector<std::string> flags;
  std::set<std::string> consumed;
  for (const std::string axis : {"b", "kt"}) {
    const auto lo = config.find(axis + "_min");
    const auto hi = config.find(axis + "_max");
    const auto steps = config.find(axis + "_steps");
    if (lo == config.end() && hi == config.end() && steps == config.end()) continue;
    if (lo == config.end() || hi == config.end() || steps == config.end()) {
      throw ParameterError("config needs all of " + axis + "_min, " + axis + "_max, " + axis +
                           "_steps");
    }
    std::string range = scalar(*lo) + ":" + scalar(*hi) + ":" + scalar(*steps);
    if (const auto scale = config.find(axis + "_scale"); scale != config.end()) {
      const std::string s = scalar(*scale);
      if (s == "geometric" || s == "geom") {
        range += ":geom";
      } else if (s != "linear" && s != "lin") {
        throw ParameterError("config " + axis + "_scale must be linear or geometric");
      }
      consumed.insert(axis + "_scale");
    }
    consumed.insert({axis + "_min", axis + "_max", axis + "_steps"});
    if (!explicit_flags.count(axis + "-range")) {
      flags.push_back("--" + axis + "-range");
      flags.push_back(range);
    }
  }
  std::string command;
  for (const auto& [key, value] : config.items()) {
    if (consumed.count(key)) continue;
    if (key == "command") {
      command = scalar(value);
      continue;
    }
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    if (explicit_flags.count(name)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) flags.push_back("--" + name);
      continue;
    }
    flags.push_back("--" + name);
    if (value.is_array()) {
      for (const auto& item : value) {
        if (item.is_array()) {
          std::string joined;
          for (const auto& part : item) joined += (joined.empty() ? "" : ",") + scalar(part);
          flags.push_back(joined);
        } else {
          flags.push_back(scalar(item));
        }
      }
      // A flat [I, J] under "pair" is one site pair.
      if (name == "pair" && !value.empty() && !value.front().is_array() && value.size() == 2) {
        flags.resize(flags.size() - 2);
        flags.push_back(scalar(value[0]) + "," + scalar(value[1]));
      }
    } else {
      flags.push_back(scalar(value));
    }
  }

  std::vector<std::string> out;
  std::size_t start = 0;
  if (!rest.empty() && rest.front().rfind("-", 0) != 0) {
    out.push_back(rest.front());
    start = 1;
  } else if (!command.empty()) {
    out.push_back(command);
  }
  out.insert(out.end(), flags.begin(), flags.end());
  out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(start), rest.end());
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal and magnetic pair entanglement in Heisenberg rings", "spinchain"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "pair measures over a (B, kT) grid");
  ModelOptions grid_model;
  AxisOptions grid_axes;
  PairOptions grid_pairs;
  std::string grid_out;
  std::string grid_format = "csv";
  std::string grid_svg;
  std::string grid_measure = "E";
  grid_model.add(*grid_cmd);
  grid_axes.add(*grid_cmd);
  grid_pairs.add(*grid_cmd);
  grid_cmd->add_option("--out", grid_out, "output path (stdout if omitted)");
  grid_cmd->add_option("--format", grid_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  grid_cmd->add_option("--svg", grid_svg, "also write an SVG plot here");
  grid_cmd->add_option("--measure", grid_measure, "plotted measure: C, E, I or M")
      ->check(CLI::IsMember({"C", "E", "I", "M"}))
      ->capture_default_str();

  // figure
  auto* fig_cmd = app.add_subcommand("figure", "write a figure dataset as figN.csv");
  int fig_id = 0;
  std::string fig_outdir = ".";
  bool fig_svg = false;
  fig_cmd->add_option("--id", fig_id, "figure number")->required()->check(CLI::Range(1, kFigureCount));
  fig_cmd->add_option("--outdir", fig_outdir, "output directory")->capture_default_str();
  fig_cmd->add_flag("--svg", fig_svg, "also write figN.svg");

  // staircase
  auto* stair_cmd = app.add_subcommand("staircase", "ground-state magnetization staircase");
  ModelOptions stair_model;
  std::string stair_out;
  stair_model.add(*stair_cmd);
  stair_cmd->add_option("--out", stair_out, "output path (stdout if omitted)");

  // elength
  auto* len_cmd = app.add_subcommand("elength", "entanglement length at one (B, kT)");
  ModelOptions len_model;
  double len_b = 0.0;
  double len_kt = 0.0;
  std::string len_out;
  len_model.add(*len_cmd);
  len_cmd->add_option("--b", len_b, "field B")->required();
  len_cmd->add_option("--kt", len_kt, "temperature kT")->required();
  len_cmd->add_option("--out", len_out, "output path (stdout if omitted)");

  // lipschitz
  auto* lip_cmd = app.add_subcommand("lipschitz", "check kT |dE/dB| <= 1 over a grid");
  ModelOptions lip_model;
  AxisOptions lip_axes;
  std::string lip_pair;
  int lip_sep = 0;
  std::string lip_out;
  lip_model.add(*lip_cmd);
  lip_axes.add(*lip_cmd);
  auto* lp = lip_cmd->add_option("--pair", lip_pair, "site pair I,J");
  lip_cmd->add_option("--sep", lip_sep, "ring separation D")->excludes(lp);
  lip_cmd->add_option("--out", lip_out, "output path (stdout if omitted)");

  // critical
  auto* crit_cmd = app.add_subcommand("critical", "saturation field, closed form and numeric");
  ModelOptions crit_model;
  std::string crit_out;
  crit_model.add(*crit_cmd);
  crit_cmd->add_option("--out", crit_out, "output path (stdout if omitted)");

  const auto usage_for = [&](const std::vector<std::string>& args) {
    for (auto* sub : app.get_subcommands({})) {
      if (!args.empty() && sub->get_name() == args.front()) return sub->help("spinchain");
    }
    return app.help();
  };

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << usage_for(args.empty() ? raw_args : args);
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "spinchain: error: " << e.what() << "\n" << usage_for(args.empty() ? raw_args : args);
    return kExitUsage;
  } catch (const Error& e) {
    err << "spinchain: error: " << e.what() << "\n" << usage_for(raw_args);
    return kExitUsage;
  }

  try {
    const ScanOptions options{thread_count_from_env()};
    if (grid_cmd->parsed()) {
      ScanGrid grid;
      grid.n_spins = grid_model.n;
      grid.coupling = grid_model.j;
      grid.fields = grid_axes.fields();
      grid.temperatures = grid_axes.temperatures();
      ModelParams{grid.n_spins, grid.coupling, 0.0, 0.0}.validate();
      grid.pairs = grid_pairs.resolve(grid.n_spins);
      grid.validate();
      const auto rows = scan_pair_measures(grid, options);
      emit(grid_out,
           grid_format == "json" ? dump(scan_json(rows)) : scan_csv(rows), out);
      if (!grid_svg.empty()) write_file(grid_svg, render_svg(scan_plot(grid, rows, grid_measure[0])));
    } else if (fig_cmd->parsed()) {
      std::error_code ec;
      std::filesystem::create_directories(fig_outdir, ec);
      if (ec) throw UsageError("cannot create '" + fig_outdir + "': " + ec.message());
      const auto dataset = figure_dataset(fig_id, options);
      const auto base = std::filesystem::path(fig_outdir) / ("fig" + std::to_string(fig_id));
      write_file(base.string() + ".csv", figure_csv(dataset.rows));
      out << base.string() << ".csv\n";
      if (fig_svg) {
        write_file(base.string() + ".svg", render_svg(dataset.plot));
        out << base.string() << ".svg\n";
      }
    } else if (stair_cmd->parsed()) {
      const auto result = magnetization_staircase(stair_model.n, stair_model.j);
      nlohmann::json j;
      j["N"] = stair_model.n;
      j["J"] = stair_model.j;
      j["B_E"] = result.b_e ? nlohmann::json(json_number(*result.b_e)) : nlohmann::json(nullptr);
      j["B_c"] = json_number(result.b_c_numeric);
      j["initial_n_up"] = result.initial_n_up;
      j["sector_ground_energies"] = result.sector_ground_energies;
      j["crossings"] = nlohmann::json::array();
      for (const auto& c : result.crossings) {
        j["crossings"].push_back(
            {{"B", json_number(c.field)}, {"from_n_up", c.from_n_up}, {"to_n_up", c.to_n_up}});
      }
      emit(stair_out, dump(j), out);
    } else if (len_cmd->parsed()) {
      const auto result =
          entanglement_length(ModelParams{len_model.n, len_model.j, len_b, len_kt});
      nlohmann::json j;
      j["l_E"] = result.length;
      j["C"] = nlohmann::json::array();
      for (double c : result.concurrence) j["C"].push_back(json_number(c));
      emit(len_out, dump(j), out);
    } else if (lip_cmd->parsed()) {
      ScanGrid grid;
      grid.n_spins = lip_model.n;
      grid.coupling = lip_model.j;
      grid.fields = lip_axes.fields();
      grid.temperatures = lip_axes.temperatures();
      ModelParams{grid.n_spins, grid.coupling, 0.0, 0.0}.validate();
      SitePair pair{0, 1};
      if (!lip_pair.empty()) {
        pair = parse_pair(lip_pair);
      } else if (lip_sep != 0) {
        pair = pairs_for_separations(grid.n_spins, {lip_sep}).front();
      }
      grid.pairs = {pair};
      const auto report = lipschitz_check(grid, pair, options);
      nlohmann::json j;
      j["i"] = pair.i;
      j["j"] = pair.j;
      j["kT"] = grid.temperatures;
      j["per_temperature"] = report.per_temperature;
      j["max_ratio"] = json_number(report.max_ratio);
      j["exceeds"] = report.exceeds;
      emit(lip_out, dump(j), out);
    } else if (crit_cmd->parsed()) {
      const double closed = critical_field_closed_form(crit_model.n, crit_model.j);
      const auto result = magnetization_staircase(crit_model.n, crit_model.j);
      nlohmann::json j;
      j["B_c_closed_form"] = json_number(closed);
      j["B_c_numeric"] = json_number(result.b_c_numeric);
      emit(crit_out, dump(j), out);
    }
  } catch (const ParameterError& e) {
    err << "spinchain: error: " << e.what() << "\n" << usage_for(args);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "spinchain: error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "spinchain: numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace spinchain::cli
