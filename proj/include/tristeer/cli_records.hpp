#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tristeer/qstate.hpp"

namespace tristeer::cli {

using Json = nlohmann::json;
using ComplexPair = std::array<double, 2>;

struct ParamsRecord {
  double alpha = 0.0;
  double phi = 0.0;
  double T = 0.0;

  StateParams to_params() const { return StateParams::make(alpha, phi, T); }
  static ParamsRecord from(const StateParams& p) { return {p.alpha_mag, p.phi, p.transmissivity}; }
};

struct FillReport {
  std::string state;  // "family", "ghz" or "w"
  std::optional<ParamsRecord> params;
  std::vector<ComplexPair> amplitudes;  // all 8, basis order |000>..|111>
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double area = 0.0;
  double fill = 0.0;
};

struct SteerReport {
  ParamsRecord params;
  std::map<std::string, double> P;
  std::string config;
};

struct ClassifyReport {
  ParamsRecord params;
  std::string config;
  std::string state_class;
};

struct SegmentRecord {
  std::string pair;
  double at = 0.0;
};

struct BoundaryReport {
  std::string sweep;
  std::string pair;  // a steering pair or "all"
  ParamsRecord fixed;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> roots;
  std::vector<SegmentRecord> crossings;
  std::vector<std::string> sequence;
  std::string note;
};

struct LoccSampleRecord {
  std::uint64_t index = 0;
  ParamsRecord state;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  int target = 1;
  double deficit = 0.0;
};

struct LoccSearchRecord {
  std::string search;  // "monte_carlo" or "grid"
  std::uint64_t samples = 0;
  double min_deficit = 0.0;
  double mean_deficit = 0.0;
  std::uint64_t flagged = 0;
  LoccSampleRecord argmin;
};

struct LoccReport {
  std::uint64_t seed = 0;
  std::vector<LoccSearchRecord> searches;
  double threshold = 0.0;
  bool passed = true;
};

struct FockReport {
  ParamsRecord params;
  std::string pattern;
  int cutoff = 0;
  ComplexPair omega0{};
  ComplexPair omega1{};
  double herald_probability = 0.0;
  double leakage = 0.0;
  double vops_fidelity = 0.0;
  double fidelity = 0.0;
  bool passed = true;
};

struct CaseRecord {
  std::string state_class;
  std::string condition;
  std::string triangle;
  std::string sides;
  ParamsRecord example;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double area = 0.0;
  double fill = 0.0;
};

struct ScanRecord {
  double alpha = 0.0;
  double phi = 0.0;
  double T = 0.0;
  std::map<std::string, double> values;
  std::map<std::string, std::string> labels;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ParamsRecord, alpha, phi, T)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SteerReport, params, P, config)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassifyReport, params, config, state_class)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SegmentRecord, pair, at)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BoundaryReport, sweep, pair, fixed, lo, hi, roots, crossings, sequence, note)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LoccSampleRecord, index, state, theta1, theta2, kappa1, kappa2, target,
                                   deficit)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LoccSearchRecord, search, samples, min_deficit, mean_deficit, flagged, argmin)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LoccReport, seed, searches, threshold, passed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FockReport, params, pattern, cutoff, omega0, omega1, herald_probability,
                                   leakage, vops_fidelity, fidelity, passed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CaseRecord, state_class, condition, triangle, sides, example, s1, s2, s3,
                                   area, fill)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ScanRecord, alpha, phi, T, values, labels)

// `params` is omitted for the named reference states.
void to_json(Json& j, const FillReport& r);
void from_json(const Json& j, FillReport& r);

}  // namespace tristeer::cli
