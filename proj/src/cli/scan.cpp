#include "tristeer/cli_scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "tristeer/entanglement.hpp"
#include "tristeer/errors.hpp"
#include "tristeer/parallel.hpp"

namespace tristeer::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view s, std::string_view what) {
  const std::string str(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != str.size() || !std::isfinite(v)) {
    throw InvalidArgument("bad " + std::string(what) + " '" + str + "'");
  }
  return v;
}

int parse_int(std::string_view s, std::string_view what) {
  const double v = parse_double(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidArgument("bad " + std::string(what) + " '" + std::string(s) + "'");
  return static_cast<int>(v);
}

constexpr std::string_view kPairColumns[] = {"P_AB", "P_BA", "P_AC", "P_CA", "P_BC", "P_CB"};

}  // namespace

double AxisSpec::value(int k) const {
  if (k + 1 == steps) return max;
  return min + (max - min) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

AxisSpec parse_axis(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw InvalidArgument("axis must look like name:min:max:steps, got '" + std::string(text) + "'");
  AxisSpec a;
  double scale = 1.0;
  if (parts[0] == "phi-pi") {
    a.axis = SweepAxis::Phi;
    scale = std::numbers::pi;
  } else {
    a.axis = sweep_axis_from_string(parts[0]);
  }
  a.min = scale * parse_double(parts[1], "axis minimum");
  a.max = scale * parse_double(parts[2], "axis maximum");
  a.steps = parse_int(parts[3], "axis step count");
  if (a.steps < 2) throw InvalidArgument("axis needs at least 2 steps");
  return a;
}

std::vector<Quantity> parse_quantities(std::string_view text) {
  std::vector<Quantity> out;
  for (auto name : split(text, ',')) {
    Quantity q;
    if (name == "fill") q = Quantity::Fill;
    else if (name == "sides") q = Quantity::Sides;
    else if (name == "area") q = Quantity::Area;
    else if (name == "P_all") q = Quantity::PAll;
    else if (name == "config") q = Quantity::Config;
    else if (name == "state_class") q = Quantity::StateClass;
    else throw InvalidArgument("unknown quantity '" + std::string(name) + "'");
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  }
  return out;
}

void validate(const ScanSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 3) throw InvalidArgument("scan needs 1 to 3 axes");
  if (spec.quantities.empty()) throw InvalidArgument("scan needs at least one quantity");
  bool swept[3] = {false, false, false};
  for (const auto& a : spec.axes) {
    auto& flag = swept[static_cast<int>(a.axis)];
    if (flag) throw InvalidArgument("axis '" + std::string(to_string(a.axis)) + "' swept twice");
    flag = true;
    if (a.steps < 2) throw InvalidArgument("axis needs at least 2 steps");
    if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw InvalidArgument("axis bounds must be finite");
  }
  const std::optional<double>* fixed[3] = {&spec.alpha, &spec.phi, &spec.T};
  for (int i = 0; i < 3; ++i) {
    const auto name = std::string(to_string(static_cast<SweepAxis>(i)));
    if (swept[i] && fixed[i]->has_value()) throw InvalidArgument(name + " is both swept and fixed");
    if (!swept[i] && !fixed[i]->has_value()) throw InvalidArgument(name + " is neither swept nor fixed");
  }
  // Reject out-of-domain corners before any work is done.
  for (const auto& a : spec.axes) {
    StateParams probe{spec.alpha.value_or(0.0), spec.phi.value_or(0.0), spec.T.value_or(0.0)};
    with_axis(probe, a.axis, a.min);
    with_axis(probe, a.axis, a.max);
  }
  validate(StateParams{spec.alpha.value_or(0.0), spec.phi.value_or(0.0), spec.T.value_or(0.0)});
}

std::vector<std::string> scan_columns(const ScanSpec& spec) {
  std::vector<std::string> cols{"alpha", "phi", "T"};
  for (auto q : spec.quantities) {
    switch (q) {
      case Quantity::Fill: cols.emplace_back("fill"); break;
      case Quantity::Sides: cols.insert(cols.end(), {"s1", "s2", "s3"}); break;
      case Quantity::Area: cols.emplace_back("area"); break;
      case Quantity::PAll: cols.insert(cols.end(), std::begin(kPairColumns), std::end(kPairColumns)); break;
      case Quantity::Config: cols.emplace_back("config"); break;
      case Quantity::StateClass: cols.emplace_back("state_class"); break;
    }
  }
  return cols;
}

std::vector<ScanRecord> evaluate_scan(const ScanSpec& spec, unsigned workers) {
  validate(spec);
  std::size_t total = 1;
  for (const auto& a : spec.axes) total *= static_cast<std::size_t>(a.steps);

  const StateParams base{spec.alpha.value_or(0.0), spec.phi.value_or(0.0), spec.T.value_or(0.0)};
  std::vector<ScanRecord> rows(total);
  parallel_for(total, workers, [&](std::size_t flat) {
    StateParams p = base;
    std::size_t rest = flat;
    for (std::size_t i = spec.axes.size(); i-- > 0;) {
      const auto& a = spec.axes[i];
      const auto steps = static_cast<std::size_t>(a.steps);
      p = with_axis(p, a.axis, a.value(static_cast<int>(rest % steps)));
      rest /= steps;
    }
    ScanRecord& r = rows[flat];
    r.alpha = p.alpha_mag;
    r.phi = p.phi;
    r.T = p.transmissivity;

    std::optional<ConcurrenceTriangle> tri;
    auto triangle = [&]() -> const ConcurrenceTriangle& {
      if (!tri) tri = concurrence_triangle(prepare_state(p));
      return *tri;
    };
    std::optional<SteeringProfile> prof;
    auto profile = [&]() -> const SteeringProfile& {
      if (!prof) prof = steering_profile(p);
      return *prof;
    };
    for (auto q : spec.quantities) {
      switch (q) {
        case Quantity::Fill: r.values["fill"] = triangle().fill; break;
        case Quantity::Sides:
          r.values["s1"] = triangle().s1;
          r.values["s2"] = triangle().s2;
          r.values["s3"] = triangle().s3;
          break;
        case Quantity::Area: r.values["area"] = triangle().area; break;
        case Quantity::PAll:
          for (std::size_t k = 0; k < kAllPairs.size(); ++k) {
            r.values[std::string(kPairColumns[k])] = profile().value(kAllPairs[k]);
          }
          break;
        case Quantity::Config: r.labels["config"] = std::string(to_string(profile().config)); break;
        case Quantity::StateClass: r.labels["state_class"] = std::string(to_string(classify_state(p))); break;
      }
    }
  });
  return rows;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string render_csv(const ScanSpec& spec, const std::vector<ScanRecord>& rows) {
  const auto cols = scan_columns(spec);
  std::ostringstream os;
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  for (const auto& r : rows) {
    os << format_number(r.alpha) << ',' << format_number(r.phi) << ',' << format_number(r.T);
    for (std::size_t c = 3; c < cols.size(); ++c) {
      os << ',';
      if (auto it = r.values.find(cols[c]); it != r.values.end()) {
        os << format_number(it->second);
      } else {
        os << r.labels.at(cols[c]);
      }
    }
    os << '\n';
  }
  return os.str();
}

std::string render_json(const std::vector<ScanRecord>& rows) { return Json(rows).dump(2) + "\n"; }

}  // namespace tristeer::cli
