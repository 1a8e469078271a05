#pragma once

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

namespace amoeba {

enum class Command {
  Help,
  Sample,
  Dim,
  Quadric,
  Member,
  Fiber,
  Coclassify,
  Tiling,
  Covolume,
  Avolume,
  Fibercount,
  Certify,
};

enum class OutputFormat { Csv, Json, Svg };

struct RunConfig {
  Command command = Command::Help;
  std::string spec_path;
  std::string ideal_path;
  std::string mode;  // amoeba|coamoeba (dim), log|arg (sample)
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 42;
  int grid = 256;
  int grid_r = 64;  // sample: log-modulus steps per parameter
  int grid_t = 64;  // sample: angle steps per parameter
  int refine = 20;
  int starts = 0;   // 0: 64 * 2^k
  double tol = 1e-9;
  std::vector<double> point;
  std::vector<double> theta;
  std::vector<double> fiber;
  bool json = false;
  std::string out_path;
  OutputFormat format = OutputFormat::Csv;
  std::vector<std::string> axes;
  std::string help_text;
};

/// Validated configuration from the arguments following the program name.
/// Throws AmoebaError(UsageError) naming the offending flag.
RunConfig parse_config(const std::vector<std::string>& args);

/// Named real columns plus an optional string label column.
struct PointCloud {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::string label_name;
  std::vector<std::string> labels;

  void add_column(std::string name, std::vector<double> values);
  std::size_t rows() const;
  /// Throws UnknownColumn.
  const std::vector<double>& column(const std::string& name) const;
  /// Throws InvalidArgument on ragged columns or non-finite values.
  void validate() const;
};

struct SvgStyle {
  std::string title;
  double point_radius = 1.5;
};

/// Header row, RFC 4180 quoting, 17 significant digits.
void write_csv(const PointCloud& cloud, std::ostream& out);
void emit_csv(const PointCloud& cloud, const std::string& path);
void emit_json(const nlohmann::ordered_json& report, const std::string& path);
/// 800 x 800 scatter of two columns, or an oblique projection of three.
/// Points are coloured by label when the cloud has labels.
void write_svg(const PointCloud& cloud, const std::vector<std::string>& axes, std::ostream& out, const SvgStyle& style = {});
void emit_svg(const PointCloud& cloud, const std::vector<std::string>& axes, const std::string& path,
              const SvgStyle& style = {});

/// Process exit code for a library error: 2 usage/input, 3 numeric
/// precondition, 4 I/O.
int exit_code_for(const std::exception& e);

/// Executes a parsed command, writing its report to `out`. Returns the exit code.
int run_command(const RunConfig& cfg, std::ostream& out);

/// parse_config + run_command with error reporting on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amoeba
