#include "amoeba/cli_io.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "amoeba/errors.hpp"
#include "amoeba/io.hpp"

namespace amoeba {

namespace {

struct CommandInfo {
  Command command;
  const char* name;
  const char* description;
};

constexpr CommandInfo kCommands[] = {
    {Command::Sample, "sample", "Sample the (co)amoeba on a parameter grid"},
    {Command::Dim, "dim", "Estimate the (co)amoeba dimension by Jacobian rank"},
    {Command::Quadric, "quadric", "Modulus quadrics of a real line"},
    {Command::Member, "member", "Exact amoeba membership for a line"},
    {Command::Fiber, "fiber", "Exact Log-fiber of a line"},
    {Command::Coclassify, "coclassify", "Solve the coamoeba linear system at a torus point (m = k)"},
    {Command::Tiling, "tiling", "Sign-pattern frequencies over the torus (m = k)"},
    {Command::Covolume, "covolume", "Monte Carlo coamoeba volume (m = k)"},
    {Command::Avolume, "avolume", "Monte Carlo amoeba volume of a real space (m = k)"},
    {Command::Fibercount, "fibercount", "Multistart Newton count of a Log-fiber (m = k)"},
    {Command::Certify, "certify", "Fiber certificate for an ideal given by generators"},
};

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text[0] == '-') {
      const long long v = std::stoll(text, &used);
      if (used == text.size()) return static_cast<std::uint64_t>(v);
    } else {
      const unsigned long long v = std::stoull(text, &used);
      if (used == text.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw AmoebaError(ErrorCode::UsageError, "--seed: expected a 64-bit integer, got '" + text + "'");
}

OutputFormat format_from_name(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "svg") return OutputFormat::Svg;
  throw AmoebaError(ErrorCode::UsageError, "--format: expected csv, json or svg, got '" + name + "'");
}

OutputFormat format_from_path(const std::string& path) {
  auto ends_with = [&](const char* suffix) {
    const std::string s(suffix);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".svg")) return OutputFormat::Svg;
  if (ends_with(".json")) return OutputFormat::Json;
  return OutputFormat::Csv;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw AmoebaError(ErrorCode::IoError, "cannot write " + path);
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw AmoebaError(ErrorCode::IoError, "failed writing " + path);
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Amoebas and coamoebas of affine linear spaces in the complex torus", "amoeba"};
  app.require_subcommand(0, 1);

  RunConfig cfg;
  long long samples = static_cast<long long>(cfg.samples);
  std::string seed_text = "42";
  std::string point_text, theta_text, fiber_text, grid_text = "64x64", format_text, axes_text;

  std::map<std::string, Command> by_name;
  for (const auto& info : kCommands) {
    CLI::App* sub = app.add_subcommand(info.name, info.description);
    by_name[info.name] = info.command;
    const Command c = info.command;
    if (c != Command::Certify) sub->add_option("--spec", cfg.spec_path, "Space coefficients (JSON)")->required();
    sub->add_flag("--json", cfg.json, "Print the report as JSON");
    sub->add_option("--out", cfg.out_path, "Output file");
    switch (c) {
      case Command::Sample:
        sub->add_option("--mode", cfg.mode, "log or arg (default log)");
        sub->add_option("--grid", grid_text, "RxT grid: log-modulus steps x angle steps per parameter");
        sub->add_option("--format", format_text, "csv, json or svg (default from --out)");
        sub->add_option("--axes", axes_text, "Comma-separated columns to plot (svg)");
        break;
      case Command::Dim:
        sub->add_option("--mode", cfg.mode, "amoeba or coamoeba (default amoeba)");
        [[fallthrough]];
      case Command::Covolume:
      case Command::Avolume:
        sub->add_option("--samples", samples, "Number of samples");
        sub->add_option("--seed", seed_text, "Random seed");
        break;
      case Command::Tiling:
        sub->add_option("--samples", samples, "Number of samples");
        sub->add_option("--seed", seed_text, "Random seed");
        sub->add_option("--format", format_text, "csv or svg for the --out point cloud");
        break;
      case Command::Member:
      case Command::Fiber:
        sub->add_option("--point", point_text, "Log point x0,x1,...")->required();
        sub->add_option("--tol", cfg.tol, "Tolerance");
        break;
      case Command::Coclassify:
        sub->add_option("--theta", theta_text, "Torus point t1,...,t2k")->required();
        break;
      case Command::Fibercount:
        sub->add_option("--point", point_text, "Log point x1,...,x2k")->required();
        sub->add_option("--starts", cfg.starts, "Newton starts (default 64*2^k)");
        sub->add_option("--seed", seed_text, "Random seed");
        break;
      case Command::Certify:
        sub->add_option("--ideal", cfg.ideal_path, "Generators (JSON)")->required();
        sub->add_option("--fiber", fiber_text, "Log-moduli x1,...,xn of the fiber torus")->required();
        sub->add_option("--grid", cfg.grid, "Grid points per angle");
        sub->add_option("--refine", cfg.refine, "Coordinate-descent rounds");
        break;
      default:
        break;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cfg.command = Command::Help;
    cfg.help_text = app.help();
    for (auto* sub : app.get_subcommands()) cfg.help_text = sub->help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw AmoebaError(ErrorCode::UsageError, e.what());
  }

  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    cfg.command = Command::Help;
    cfg.help_text = app.help();
    return cfg;
  }
  cfg.command = by_name.at(chosen.front()->get_name());
  if (cfg.mode.empty() && cfg.command == Command::Sample) cfg.mode = "log";
  if (cfg.mode.empty() && cfg.command == Command::Dim) cfg.mode = "amoeba";

  if (samples < 0) throw AmoebaError(ErrorCode::UsageError, "--samples: must be non-negative");
  cfg.samples = static_cast<std::uint64_t>(samples);
  cfg.seed = parse_seed(seed_text);
  if (!point_text.empty()) cfg.point = parse_number_list(point_text, "--point");
  if (!theta_text.empty()) cfg.theta = parse_number_list(theta_text, "--theta");
  if (!fiber_text.empty()) cfg.fiber = parse_number_list(fiber_text, "--fiber");
  if (cfg.command == Command::Certify && cfg.grid < 8) throw AmoebaError(ErrorCode::UsageError, "--grid: must be >= 8");
  if (cfg.refine < 0) throw AmoebaError(ErrorCode::UsageError, "--refine: must be non-negative");
  if (cfg.starts < 0) throw AmoebaError(ErrorCode::UsageError, "--starts: must be non-negative");
  if (!(cfg.tol > 0.0)) throw AmoebaError(ErrorCode::UsageError, "--tol: must be positive");

  if (cfg.command == Command::Sample) {
    if (cfg.mode != "log" && cfg.mode != "arg") throw AmoebaError(ErrorCode::UsageError, "--mode: expected log or arg");
    std::string g = grid_text;
    const std::string times = "\xC3\x97";  // U+00D7
    if (auto pos = g.find(times); pos != std::string::npos) g.replace(pos, times.size(), "x");
    std::replace(g.begin(), g.end(), 'X', 'x');
    const auto pos = g.find('x');
    try {
      if (pos == std::string::npos) throw std::invalid_argument("no separator");
      std::size_t used_r = 0, used_t = 0;
      cfg.grid_r = std::stoi(g.substr(0, pos), &used_r);
      cfg.grid_t = std::stoi(g.substr(pos + 1), &used_t);
      if (used_r != pos || used_t != g.size() - pos - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw AmoebaError(ErrorCode::UsageError, "--grid: expected RxT, got '" + grid_text + "'");
    }
    if (cfg.grid_r < 1 || cfg.grid_t < 1) throw AmoebaError(ErrorCode::UsageError, "--grid: both sizes must be positive");
  }
  if (cfg.command == Command::Dim && cfg.mode != "amoeba" && cfg.mode != "coamoeba") {
    throw AmoebaError(ErrorCode::UsageError, "--mode: expected amoeba or coamoeba");
  }
  if (!cfg.spec_path.empty() || cfg.command == Command::Certify) {
    if (cfg.command == Command::Certify ? cfg.ideal_path.empty() : cfg.spec_path.empty()) {
      throw AmoebaError(ErrorCode::UsageError, "input path must be non-empty");
    }
  }
  cfg.format = !format_text.empty() ? format_from_name(format_text) : format_from_path(cfg.out_path);
  if (!axes_text.empty()) {
    std::stringstream ss(axes_text);
    std::string name;
    while (std::getline(ss, name, ',')) cfg.axes.push_back(name);
    if (cfg.axes.size() < 2 || cfg.axes.size() > 3) throw AmoebaError(ErrorCode::UsageError, "--axes: give two or three columns");
  }
  return cfg;
}

void PointCloud::add_column(std::string name, std::vector<double> values) {
  names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

std::size_t PointCloud::rows() const {
  if (!columns.empty()) return columns.front().size();
  return labels.size();
}

const std::vector<double>& PointCloud::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return columns[i];
  }
  throw AmoebaError(ErrorCode::UnknownColumn, "no column named '" + name + "'");
}

void PointCloud::validate() const {
  const std::size_t n = rows();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].size() != n) throw AmoebaError(ErrorCode::InvalidArgument, "column '" + names[i] + "' has a different length");
    for (double v : columns[i]) {
      if (!std::isfinite(v)) throw AmoebaError(ErrorCode::InvalidArgument, "column '" + names[i] + "' has a non-finite value");
    }
  }
  if (!labels.empty() && labels.size() != n) throw AmoebaError(ErrorCode::InvalidArgument, "label column has a different length");
}

void write_csv(const PointCloud& cloud, std::ostream& out) {
  cloud.validate();
  const bool has_labels = !cloud.label_name.empty();
  std::string line;
  for (std::size_t c = 0; c < cloud.names.size(); ++c) {
    if (c) line += ',';
    line += csv_field(cloud.names[c]);
  }
  if (has_labels) line += (cloud.names.empty() ? "" : ",") + csv_field(cloud.label_name);
  out << line << "\r\n";
  for (std::size_t r = 0; r < cloud.rows(); ++r) {
    line.clear();
    for (std::size_t c = 0; c < cloud.columns.size(); ++c) {
      if (c) line += ',';
      line += format_double(cloud.columns[c][r]);
    }
    if (has_labels) line += (cloud.columns.empty() ? "" : ",") + csv_field(cloud.labels[r]);
    out << line << "\r\n";
  }
}

void emit_csv(const PointCloud& cloud, const std::string& path) {
  auto out = open_output(path);
  write_csv(cloud, out);
  finish_output(out, path);
}

void emit_json(const nlohmann::ordered_json& report, const std::string& path) {
  auto out = open_output(path);
  out << report.dump(2) << "\n";
  finish_output(out, path);
}

void write_svg(const PointCloud& cloud, const std::vector<std::string>& axes, std::ostream& out, const SvgStyle& style) {
  cloud.validate();
  if (axes.size() != 2 && axes.size() != 3) throw AmoebaError(ErrorCode::InvalidArgument, "svg needs two or three axes");
  std::vector<const std::vector<double>*> cols;
  for (const auto& a : axes) cols.push_back(&cloud.column(a));

  constexpr double kSize = 800.0;
  constexpr double kMargin = 70.0;
  const std::size_t n = cloud.rows();

  // Each axis is rescaled to [0, 1].
  std::vector<std::pair<double, double>> range;
  for (const auto* col : cols) {
    double lo = 0.0, hi = 1.0;
    if (!col->empty()) {
      const auto [mn, mx] = std::minmax_element(col->begin(), col->end());
      lo = *mn;
      hi = *mx;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
    range.emplace_back(lo, hi);
  }
  auto unit = [&](std::size_t axis, std::size_t row) {
    return ((*cols[axis])[row] - range[axis].first) / (range[axis].second - range[axis].first);
  };
  // Oblique projection for three axes: x to the lower right, y to the lower left, z up.
  auto project = [&](std::size_t row) -> std::pair<double, double> {
    if (cols.size() == 2) return {unit(0, row), unit(1, row)};
    const double x = unit(0, row), y = unit(1, row), z = unit(2, row);
    const double c = std::sqrt(3.0) / 2.0;
    return {0.5 + 0.5 * c * (x - y), 0.25 * (x + y) + 0.5 * z};
  };

  std::map<std::string, int> palette_index;
  for (const auto& l : cloud.labels) palette_index.emplace(l, 0);
  int next = 0;
  for (auto& [label, idx] : palette_index) idx = next++;
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                   "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

  const double plot = kSize - 2.0 * kMargin;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
  if (!style.title.empty()) {
    out << "<text x=\"400\" y=\"35\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">"
        << xml_escape(style.title) << "</text>\n";
  }
  out << "<rect x=\"" << fixed2(kMargin) << "\" y=\"" << fixed2(kMargin) << "\" width=\"" << fixed2(plot)
      << "\" height=\"" << fixed2(plot) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<g>\n";
  for (std::size_t r = 0; r < n; ++r) {
    const auto [u, v] = project(r);
    const double px = kMargin + u * plot;
    const double py = kSize - kMargin - v * plot;
    const char* color = cloud.labels.empty() ? kPalette[0] : kPalette[palette_index[cloud.labels[r]] % 10];
    out << "<circle cx=\"" << fixed2(px) << "\" cy=\"" << fixed2(py) << "\" r=\"" << fixed2(style.point_radius)
        << "\" fill=\"" << color << "\"/>\n";
  }
  out << "</g>\n";

  const std::string font = "font-family=\"sans-serif\" font-size=\"14\"";
  if (cols.size() == 2) {
    out << "<text x=\"400\" y=\"775\" text-anchor=\"middle\" " << font << ">" << xml_escape(axes[0]) << " ["
        << fixed2(range[0].first) << ", " << fixed2(range[0].second) << "]</text>\n";
    out << "<text x=\"25\" y=\"400\" text-anchor=\"middle\" transform=\"rotate(-90 25 400)\" " << font << ">"
        << xml_escape(axes[1]) << " [" << fixed2(range[1].first) << ", " << fixed2(range[1].second) << "]</text>\n";
  } else {
    for (std::size_t a = 0; a < 3; ++a) {
      out << "<text x=\"" << fixed2(kMargin) << "\" y=\"" << fixed2(kSize - 45.0 + 15.0 * a - 30.0) << "\" " << font
          << ">" << "xyz"[a] << ": " << xml_escape(axes[a]) << " [" << fixed2(range[a].first) << ", "
          << fixed2(range[a].second) << "]</text>\n";
    }
  }
  if (!cloud.labels.empty()) {
    double y = kMargin + 20.0;
    for (const auto& [label, idx] : palette_index) {
      out << "<circle cx=\"" << fixed2(kSize - kMargin - 90.0) << "\" cy=\"" << fixed2(y - 5.0) << "\" r=\"5\" fill=\""
          << kPalette[idx % 10] << "\"/>\n";
      out << "<text x=\"" << fixed2(kSize - kMargin - 78.0) << "\" y=\"" << fixed2(y) << "\" " << font << ">"
          << xml_escape(label) << "</text>\n";
      y += 20.0;
    }
  }
  out << "</svg>\n";
}

void emit_svg(const PointCloud& cloud, const std::vector<std::string>& axes, const std::string& path, const SvgStyle& style) {
  for (const auto& a : axes) cloud.column(a);
  auto out = open_output(path);
  write_svg(cloud, axes, out, style);
  finish_output(out, path);
}

int exit_code_for(const std::exception& e) {
  const auto* err = dynamic_cast<const AmoebaError*>(&e);
  if (!err) return 3;
  switch (err->code()) {
    case ErrorCode::UsageError:
    case ErrorCode::InvalidSpec:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownColumn:
    case ErrorCode::DimensionMismatch:
      return 2;
    case ErrorCode::IoError:
      return 4;
    default:
      return 3;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = parse_config(args);
    return run_command(cfg, out);
  } catch (const std::exception& e) {
    err << "amoeba: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace amoeba
