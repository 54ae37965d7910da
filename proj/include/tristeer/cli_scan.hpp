#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tristeer/cli_records.hpp"
#include "tristeer/steering.hpp"

namespace tristeer::cli {

struct AxisSpec {
  SweepAxis axis = SweepAxis::Alpha;
  double min = 0.0;
  double max = 0.0;
  int steps = 2;

  double value(int k) const;
};

enum class Quantity { Fill, Sides, Area, PAll, Config, StateClass };
enum class OutputFormat { Csv, Json };

struct ScanSpec {
  std::vector<AxisSpec> axes;
  std::optional<double> alpha;
  std::optional<double> phi;
  std::optional<double> T;
  std::vector<Quantity> quantities{Quantity::Fill};
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;
};

/// "name:min:max:steps" with name alpha, phi, phi-pi (bounds in units of pi) or T.
AxisSpec parse_axis(std::string_view text);
/// Comma-separated subset of fill, sides, area, P_all, config, state_class.
std::vector<Quantity> parse_quantities(std::string_view text);

/// Throws InvalidArgument unless 1-3 distinct axes with steps >= 2 are swept
/// and exactly the remaining parameters are fixed.
void validate(const ScanSpec& spec);

/// alpha, phi, T, then the requested quantity columns.
std::vector<std::string> scan_columns(const ScanSpec& spec);

/// Grid rows, the first declared axis varying slowest.
std::vector<ScanRecord> evaluate_scan(const ScanSpec& spec, unsigned workers = 0);

/// 9 significant digits, "-0" printed as "0".
std::string format_number(double v);

std::string render_csv(const ScanSpec& spec, const std::vector<ScanRecord>& rows);
std::string render_json(const std::vector<ScanRecord>& rows);

}  // namespace tristeer::cli
