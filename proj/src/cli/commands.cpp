#include "tristeer/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "tristeer/cli_records.hpp"
#include "tristeer/cli_scan.hpp"
#include "tristeer/entanglement.hpp"
#include "tristeer/errors.hpp"
#include "tristeer/focksim.hpp"
#include "tristeer/locc.hpp"
#include "tristeer/steering.hpp"

namespace tristeer::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFidelityFloor = 1.0 - 1e-10;

struct UsageError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct IoError : Error {
  using Error::Error;
};

struct ParamFlags {
  std::optional<double> alpha;
  std::optional<double> phi;
  std::optional<double> phi_pi;
  std::optional<double> T;

  void attach(CLI::App* app) {
    app->add_option("--alpha", alpha, "coherent amplitude magnitude |alpha|");
    auto* p = app->add_option("--phi", phi, "phase phi in radians");
    auto* pp = app->add_option("--phi-pi", phi_pi, "phase phi in units of pi");
    p->excludes(pp);
    app->add_option("--T", T, "beam-splitter transmissivity");
  }

  std::optional<double> phase() const {
    if (phi_pi) return *phi_pi * kPi;
    return phi;
  }

  StateParams require(bool phi_defaults_to_zero = true) const {
    if (!alpha) throw UsageError("--alpha is required");
    if (!T) throw UsageError("--T is required");
    const auto ph = phase();
    if (!ph && !phi_defaults_to_zero) throw UsageError("--phi or --phi-pi is required");
    return StateParams::make(*alpha, ph.value_or(0.0), *T);
  }
};

struct OutputFlags {
  std::string output;
  std::string format = "json";

  void attach(CLI::App* app, std::string default_format = "json") {
    format = std::move(default_format);
    app->add_option("--output", output, "write the report to this file");
    app->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  }

  bool csv() const { return format == "csv"; }
};

ComplexPair pair_of(cplx z) { return {z.real(), z.imag()}; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

std::string num(double v) { return format_number(v); }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open output file '" + path + "'");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing output file '" + path + "'");
}

FillReport fill_report(const std::string& label, std::optional<StateParams> params,
                       const ThreeQubitPureState& psi) {
  FillReport r;
  r.state = label;
  if (params) r.params = ParamsRecord::from(*params);
  for (const auto& a : psi.amplitudes()) r.amplitudes.push_back(pair_of(a));
  const ConcurrenceTriangle t = concurrence_triangle(psi);
  r.s1 = t.s1;
  r.s2 = t.s2;
  r.s3 = t.s3;
  r.area = t.area;
  r.fill = t.fill;
  return r;
}

std::string render_fill(const FillReport& r, bool csv) {
  if (!csv) return dump(r);
  std::string a, ph, t;
  if (r.params) {
    a = num(r.params->alpha);
    ph = num(r.params->phi);
    t = num(r.params->T);
  }
  return csv_line({"state", "alpha", "phi", "T", "s1", "s2", "s3", "area", "fill"}) +
         csv_line({r.state, a, ph, t, num(r.s1), num(r.s2), num(r.s3), num(r.area), num(r.fill)});
}

SteerReport steer_report(const StateParams& p) {
  const SteeringProfile prof = steering_profile(p);
  SteerReport r;
  r.params = ParamsRecord::from(p);
  for (auto pair : kAllPairs) r.P[std::string(to_string(pair))] = prof.value(pair);
  r.config = std::string(to_string(prof.config));
  return r;
}

std::string render_steer(const SteerReport& r, bool csv) {
  if (!csv) return dump(r);
  std::vector<std::string> head{"alpha", "phi", "T"};
  std::vector<std::string> row{num(r.params.alpha), num(r.params.phi), num(r.params.T)};
  for (auto pair : kAllPairs) {
    head.push_back("P_" + std::string(to_string(pair)));
    row.push_back(num(r.P.at(std::string(to_string(pair)))));
  }
  head.emplace_back("config");
  row.push_back(r.config);
  return csv_line(head) + csv_line(row);
}

std::vector<CaseRecord> case_table() {
  struct Row {
    const char* condition;
    const char* triangle;
    const char* sides;
    double alpha;
    double T;
  };
  static constexpr Row rows[] = {
      {"|alpha| = 0", "dot", "s1 = s2 = s3 = 0", 0.0, 0.5},
      {"|alpha| != 0, T = 0", "line", "s1 = s3 = Omega^2 > 0, s2 = 0", 1.0, 0.0},
      {"|alpha| != 0, T = 1", "line", "s1 = s2 = Omega^2 > 0, s3 = 0", 1.0, 1.0},
      {"|alpha| != 0, 0 < T < 1", "triangle", "s1, s2, s3 > 0", 1.0, 0.5},
  };
  std::vector<CaseRecord> out;
  for (const auto& row : rows) {
    const StateParams p = StateParams::make(row.alpha, 0.0, row.T);
    const ConcurrenceTriangle t = concurrence_triangle(prepare_state(p));
    out.push_back({std::string(to_string(classify_state(p))), row.condition, row.triangle, row.sides,
                   ParamsRecord::from(p), t.s1, t.s2, t.s3, t.area, t.fill});
  }
  return out;
}

std::string render_cases(const std::vector<CaseRecord>& rows, bool csv) {
  if (!csv) return dump(Json(rows));
  std::string s = csv_line({"state_class", "condition", "triangle", "sides", "alpha", "phi", "T", "s1", "s2",
                            "s3", "area", "fill"});
  for (const auto& r : rows) {
    s += csv_line({r.state_class, "\"" + r.condition + "\"", r.triangle, "\"" + r.sides + "\"",
                   num(r.example.alpha), num(r.example.phi), num(r.example.T), num(r.s1), num(r.s2), num(r.s3),
                   num(r.area), num(r.fill)});
  }
  return s;
}

double natural_lo(SweepAxis) { return 0.0; }

double natural_hi(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Alpha: return 6.0;
    case SweepAxis::Phi: return kPi;
    case SweepAxis::Transmissivity: return 1.0;
  }
  return 1.0;
}

LoccSampleRecord sample_record(const LoccSample& s) {
  return {s.index,       ParamsRecord::from(s.state), s.povm.theta1, s.povm.theta2, s.povm.kappa1,
          s.povm.kappa2, index_of(s.povm.target),     s.deficit};
}

LoccSearchRecord search_record(std::string name, const LoccSummary& s) {
  return {std::move(name), s.samples, s.min_deficit, s.mean_deficit, s.flagged, sample_record(s.argmin)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement and steering of a heralded three-qubit optical state"};
  app.name("tristeer");
  app.require_subcommand(1, 1);
  app.fallthrough(false);

  ParamFlags params;
  OutputFlags output;
  std::string state_name = "family";

  auto* fill = app.add_subcommand("fill", "concurrence triangle and fill of one state");
  params.attach(fill);
  output.attach(fill);
  fill->add_option("--state", state_name, "family, ghz or w")->check(CLI::IsMember({"family", "ghz", "w"}));

  auto* steer = app.add_subcommand("steer", "six steering functionals and the configuration");
  params.attach(steer);
  output.attach(steer);

  auto* classify = app.add_subcommand("classify", "steering configuration and state class");
  params.attach(classify);
  output.attach(classify);

  auto* scan = app.add_subcommand("scan", "grid scan over 1-3 parameters");
  params.attach(scan);
  OutputFlags scan_output;
  scan_output.attach(scan, "csv");
  std::vector<std::string> axis_texts;
  std::string quantities = "fill";
  unsigned workers = 0;
  scan->add_option("--axis", axis_texts, "name:min:max:steps (alpha, phi, phi-pi or T); repeatable")
      ->required()
      ->take_all();
  scan->add_option("--quantities", quantities, "comma list of fill, sides, area, P_all, config, state_class");
  scan->add_option("--workers", workers, "worker threads (0 = hardware concurrency)");

  auto* boundary = app.add_subcommand("boundary", "roots of P - 2 along one parameter");
  params.attach(boundary);
  output.attach(boundary);
  std::string sweep_name;
  std::string pair_name = "all";
  std::optional<double> lo;
  std::optional<double> hi;
  BoundaryOptions bopts;
  boundary->add_option("--sweep", sweep_name, "alpha, phi or T")->required();
  boundary->add_option("--pair", pair_name, "AB, BA, AC, CA, BC, CB or all");
  boundary->add_option("--lo", lo, "lower end of the sweep");
  boundary->add_option("--hi", hi, "upper end of the sweep");
  boundary->add_option("--grid", bopts.grid_intervals, "bracketing grid intervals")->check(CLI::PositiveNumber);
  boundary->add_option("--tol", bopts.tolerance, "bisection tolerance")->check(CLI::PositiveNumber);

  auto* locc = app.add_subcommand("locc-check", "search for fill increases under one-qubit measurements");
  output.attach(locc);
  std::uint64_t samples = 100000;
  std::uint64_t seed = 7;
  int grid_points = 9;
  locc->add_option("--samples", samples, "Monte Carlo sample count");
  locc->add_option("--seed", seed, "Monte Carlo seed");
  locc->add_option("--grid-points", grid_points, "coarse-grid points per angle (0 skips the grid)")
      ->check(CLI::NonNegativeNumber);
  locc->add_option("--workers", workers, "worker threads (0 = hardware concurrency)");

  auto* fock = app.add_subcommand("fock-verify", "Fock-space simulation of the preparation circuit");
  params.attach(fock);
  output.attach(fock);
  std::string cutoff_text = "auto";
  std::string pattern_name = "canonical";
  fock->add_option("--cutoff", cutoff_text, "photon-number cutoff or auto");
  fock->add_option("--pattern", pattern_name, "canonical or alternate herald")
      ->check(CLI::IsMember({"canonical", "alternate"}));

  auto* cases = app.add_subcommand("cases", "taxonomy of degenerate cases");
  output.attach(cases);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    auto refuse_csv = [&](const char* cmd) {
      if (output.csv()) throw UsageError(std::string(cmd) + " reports are JSON only");
    };

    if (fill->parsed()) {
      FillReport r;
      if (state_name == "family") {
        const StateParams p = params.require();
        r = fill_report("family", p, prepare_state(p));
      } else {
        if (params.alpha || params.T || params.phase()) throw UsageError("--state excludes family parameters");
        r = fill_report(state_name, std::nullopt,
                        state_name == "ghz" ? ThreeQubitPureState::ghz() : ThreeQubitPureState::w());
      }
      emit(render_fill(r, output.csv()), output.output, out);
      return kOk;
    }

    if (steer->parsed()) {
      emit(render_steer(steer_report(params.require()), output.csv()), output.output, out);
      return kOk;
    }

    if (classify->parsed()) {
      const StateParams p = params.require();
      ClassifyReport r{ParamsRecord::from(p), std::string(to_string(steering_profile(p).config)),
                       std::string(to_string(classify_state(p)))};
      const std::string text =
          output.csv() ? csv_line({"alpha", "phi", "T", "config", "state_class"}) +
                             csv_line({num(r.params.alpha), num(r.params.phi), num(r.params.T), r.config,
                                       r.state_class})
                       : dump(r);
      emit(text, output.output, out);
      return kOk;
    }

    if (scan->parsed()) {
      ScanSpec spec;
      for (const auto& a : axis_texts) spec.axes.push_back(parse_axis(a));
      spec.alpha = params.alpha;
      spec.phi = params.phase();
      spec.T = params.T;
      spec.quantities = parse_quantities(quantities);
      spec.format = scan_output.csv() ? OutputFormat::Csv : OutputFormat::Json;
      spec.output_path = scan_output.output;
      const auto rows = evaluate_scan(spec, workers);
      emit(spec.format == OutputFormat::Csv ? render_csv(spec, rows) : render_json(rows), spec.output_path, out);
      return kOk;
    }

    if (boundary->parsed()) {
      refuse_csv("boundary");
      const SweepAxis axis = sweep_axis_from_string(sweep_name);
      const std::optional<double> given[3] = {params.alpha, params.phase(), params.T};
      for (int i = 0; i < 3; ++i) {
        const auto name = std::string(to_string(static_cast<SweepAxis>(i)));
        if (i == static_cast<int>(axis) && given[i]) throw UsageError(name + " is swept and cannot be fixed");
        if (i != static_cast<int>(axis) && !given[i]) throw UsageError(name + " must be fixed for this sweep");
      }
      const StateParams fixed =
          with_axis({given[0].value_or(0.0), given[1].value_or(0.0), given[2].value_or(0.0)}, axis,
                    lo.value_or(natural_lo(axis)));
      BoundaryReport r;
      r.sweep = std::string(to_string(axis));
      r.fixed = ParamsRecord::from(fixed);
      r.lo = lo.value_or(natural_lo(axis));
      r.hi = hi.value_or(natural_hi(axis));
      if (pair_name == "all") {
        r.pair = "all";
        const ConfigurationSweep sweep = sweep_configurations(fixed, axis, r.lo, r.hi, bopts);
        for (const auto& c : sweep.crossings) {
          r.roots.push_back(c.at);
          r.crossings.push_back({std::string(to_string(c.pair)), c.at});
        }
        for (auto c : sweep.sequence) r.sequence.emplace_back(to_string(c));
        if (r.roots.empty()) r.note = "no sign change of any P - 2 on the interval";
      } else {
        const SteeringPair pair = steering_pair_from_string(pair_name);
        r.pair = std::string(to_string(pair));
        try {
          r.roots = find_boundary(fixed, axis, r.lo, r.hi, pair, bopts);
          for (double x : r.roots) r.crossings.push_back({r.pair, x});
        } catch (const NoRoot& e) {
          r.note = e.what();
        }
      }
      emit(dump(r), output.output, out);
      return kOk;
    }

    if (locc->parsed()) {
      refuse_csv("locc-check");
      LoccReport r;
      r.seed = seed;
      r.threshold = -kDeficitFlag;
      const LoccSummary mc = locc_monte_carlo(samples, seed, workers);
      r.searches.push_back(search_record("monte_carlo", mc));
      r.passed = mc.passed();
      if (grid_points > 0) {
        const LoccSummary grid = locc_grid_search(grid_points, workers);
        r.searches.push_back(search_record("grid", grid));
        r.passed = r.passed && grid.passed();
      }
      emit(dump(r), output.output, out);
      if (!r.passed) err << "locc-check: deficit below " << num(r.threshold) << " found\n";
      return r.passed ? kOk : kVerificationFailed;
    }

    if (fock->parsed()) {
      refuse_csv("fock-verify");
      const StateParams p = params.require();
      int cutoff = 0;
      if (cutoff_text == "auto") {
        cutoff = fock::minimal_cutoff(p.alpha_mag);
      } else {
        std::size_t used = 0;
        try {
          cutoff = std::stoi(cutoff_text, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != cutoff_text.size() || cutoff < 1) {
          throw UsageError("--cutoff must be a positive integer or auto");
        }
      }
      const bool canonical = pattern_name == "canonical";
      const fock::ScissorsResult s =
          fock::run_scissors(p.alpha(), cutoff, canonical ? fock::HeraldPattern::canonical()
                                                          : fock::HeraldPattern::alternate());
      // The alternate herald flips the sign of alpha, which is phi + pi.
      const StateParams target = canonical ? p : StateParams{p.alpha_mag, p.phi + kPi, p.transmissivity};
      const VopsAmplitudes want = vops_amplitudes(target);
      FockReport r;
      r.params = ParamsRecord::from(p);
      r.pattern = pattern_name;
      r.cutoff = cutoff;
      r.omega0 = pair_of(s.vops.omega0);
      r.omega1 = pair_of(s.vops.omega1);
      r.herald_probability = s.herald_probability;
      r.leakage = s.leakage;
      r.vops_fidelity = std::norm(std::conj(want.omega0) * s.vops.omega0 + std::conj(want.omega1) * s.vops.omega1);
      r.fidelity = fidelity(fock::run_tritter(s.vops, p.transmissivity), prepare_state(target));
      r.passed = r.vops_fidelity >= kFidelityFloor && r.fidelity >= kFidelityFloor;
      emit(dump(r), output.output, out);
      return r.passed ? kOk : kVerificationFailed;
    }

    if (cases->parsed()) {
      emit(render_cases(case_table(), output.csv()), output.output, out);
      return kOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CutoffTooSmall& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const HeraldPatternAmbiguous& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace tristeer::cli
