// Acceptance run: one PASS/FAIL line per criterion, followed by indented
// detail lines. Exit status is nonzero when any criterion fails.

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tristeer/entanglement.hpp"
#include "tristeer/focksim.hpp"
#include "tristeer/locc.hpp"
#include "tristeer/steering.hpp"

using namespace tristeer;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::check(bool ok, const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  details.push_back(std::string(ok ? "ok   " : "BAD  ") + buf);
  pass = pass && ok;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o = body();
  const double s = seconds_since(t0);
  std::printf("%s criterion %d: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, s);
  for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  char buf[32];
  for (double x : xs) {
    std::snprintf(buf, sizeof buf, "%s%.7g", s.empty() ? "" : ", ", x);
    s += buf;
  }
  return "{" + s + "}";
}

std::string join(const std::vector<Configuration>& cs) {
  std::string s;
  for (auto c : cs) s += (s.empty() ? "" : "/") + std::string(to_string(c));
  return s;
}

Outcome fill_golden() {
  Outcome o;
  const auto t0 = Clock::now();
  struct Case {
    double alpha, t, want;
  };
  for (auto c : {Case{5.5, 0.3, 0.684394}, Case{5.5, 0.5, 0.752832}, Case{5.5, 0.7, 0.684394},
                 Case{1.5, 0.5, 0.3851}, Case{2.5, 0.5, 0.5971}, Case{3.5, 0.5, 0.6867}}) {
    const double got = concurrence_fill(StateParams::make(c.alpha, 0.0, c.t));
    o.check(std::abs(got - c.want) <= 1e-4, "fill(%.1f, %.1f) = %.7f, expected %g +- 1e-4", c.alpha, c.t, got, c.want);
  }
  const double s = seconds_since(t0);
  o.check(s < 1.0, "runtime %.4f s < 1 s", s);
  return o;
}

Outcome reference_states() {
  Outcome o;
  const double g = concurrence_fill(ThreeQubitPureState::ghz());
  const double w = concurrence_fill(ThreeQubitPureState::w());
  o.check(std::abs(g - 1.0) <= 1e-12, "fill(GHZ) = %.15f", g);
  o.check(std::abs(w - 8.0 / 9.0) <= 1e-12, "fill(W) = %.15f (8/9 = %.15f)", w, 8.0 / 9.0);
  for (double phi : {0.0, 0.1 * pi, 0.5, 2.0, 3.0}) {
    const double f = concurrence_fill(StateParams::make(1e6, phi, 0.5));
    o.check(std::abs(f - 0.803428) <= 1e-5, "fill(1e6, %.4f, 0.5) = %.7f", phi, f);
  }
  return o;
}

Outcome steering_golden() {
  Outcome o;
  const auto p = steering_profile(StateParams::make(3.5, 0.1 * pi, 0.5));
  const double want[] = {1.6719, 1.8398, 1.6719, 1.8398, 2.1978, 2.1978};
  for (std::size_t k = 0; k < kAllPairs.size(); ++k) {
    const double got = p.value(kAllPairs[k]);
    o.check(std::abs(got - want[k]) <= 1e-3, "P_%s = %.7f, expected %.4f +- 1e-3",
            std::string(to_string(kAllPairs[k])).c_str(), got, want[k]);
  }
  o.check(p.config == Configuration::E, "configuration %s, expected e", std::string(to_string(p.config)).c_str());
  return o;
}

Outcome boundary_roots() {
  Outcome o;
  struct Sweep {
    const char* name;
    StateParams fixed;
    SweepAxis axis;
    double lo, hi;
    std::vector<double> roots;
    std::vector<Configuration> sequence;
  };
  using C = Configuration;
  const Sweep sweeps[] = {
      {"(a) |alpha| in [0, 6], phi = 0.1pi, T = 0.3", StateParams::make(0, 0.1 * pi, 0.3), SweepAxis::Alpha, 0, 6,
       {1.19751, 1.28267, 1.94563}, {C::A, C::G, C::H, C::I}},
      {"(b) phi in [0, pi/4], |alpha| = 0.2, T = 0.3", StateParams::make(0.2, 0, 0.3), SweepAxis::Phi, 0, pi / 4,
       {0.175126, 0.266456, 0.306136}, {C::I, C::H, C::G, C::A}},
      {"(c) T in [0, 1], |alpha| = 0.2, phi = 0.1pi", StateParams::make(0.2, 0.1 * pi, 0), SweepAxis::Transmissivity,
       0, 1, {0.210711, 0.271447, 0.728553, 0.789289}, {C::H, C::G, C::A, C::C, C::B}},
  };
  for (const auto& s : sweeps) {
    const auto t0 = Clock::now();
    const auto result = sweep_configurations(s.fixed, s.axis, s.lo, s.hi);
    const double secs = seconds_since(t0);
    std::vector<double> got;
    for (const auto& c : result.crossings) got.push_back(c.at);
    bool same = got.size() == s.roots.size();
    for (std::size_t k = 0; same && k < got.size(); ++k) same = std::abs(got[k] - s.roots[k]) <= 1e-4;
    o.check(same, "%s: roots %s, expected %s", s.name, join(got).c_str(), join(s.roots).c_str());
    o.check(result.sequence == s.sequence, "%s: sequence %s, expected %s", s.name, join(result.sequence).c_str(),
            join(s.sequence).c_str());
    o.check(secs < 10.0, "%s: runtime %.3f s < 10 s", s.name, secs);
  }
  return o;
}

Outcome oracle_suites() {
  Outcome o;
  std::mt19937_64 rng(20240501);

  double worst_fid = 1.0;
  for (int k = 0; k < 1000; ++k) {
    const auto p = oracle::random_params(rng);
    const auto s = fock::run_scissors(p.alpha(), fock::minimal_cutoff(p.alpha_mag));
    worst_fid = std::min(worst_fid, fidelity(fock::run_tritter(s.vops, p.transmissivity), prepare_state(p)));
  }
  o.check(worst_fid >= 1 - 1e-9, "(i) Fock simulation vs prepared state, 1e3 params: min fidelity 1 - %.3g",
          1 - worst_fid);

  double worst_moments = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const auto r = variances_covariances(oracle::random_params(rng));
    worst_moments = std::max(worst_moments, r.closed_form.max_abs_difference(r.numeric));
  }
  o.check(worst_moments <= 1e-10, "(ii) closed-form vs dense moments, 1e4 params: max |diff| %.3g", worst_moments);

  double worst_schmidt = 0.0;
  double worst_routes = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const auto p = oracle::random_params(rng);
    const auto s = prepare_state(p);
    for (int q = 1; q <= 3; ++q) {
      const auto qubit = static_cast<Qubit>(q);
      Eigen::SelfAdjointEigenSolver<oracle::Mat2> es(oracle::reduced(s, q));
      const auto closed = family::schmidt_pair(p, qubit);
      worst_schmidt = std::max({worst_schmidt, std::abs(closed.lambda1 - es.eigenvalues()(1)),
                                std::abs(closed.lambda2 - es.eigenvalues()(0))});
      const double c0 = family::concurrence(p, qubit);
      const double c1 = concurrence_one_vs_pair(s, qubit);
      const double c2 = concurrence_from_weight(schmidt_weight(schmidt_pair(s, qubit)));
      worst_routes = std::max({worst_routes, std::abs(c0 - c1), std::abs(c0 - c2), std::abs(c1 - c2)});
    }
  }
  o.check(worst_schmidt <= 1e-10, "(iii) Schmidt closed forms vs 2x2 eigensolve, 1e4 params: max |diff| %.3g",
          worst_schmidt);
  o.check(worst_routes <= 1e-10, "(iv) three concurrence routes, 1e4 params: max spread %.3g", worst_routes);
  return o;
}

Outcome global_properties() {
  Outcome o;
  const auto t0 = Clock::now();

  double min_bc = 1e300;
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j)
      for (int k = 0; k < 50; ++k) {
        const auto p = steering_profile(StateParams::make(6.0 * i / 49, pi * j / 49, k / 49.0));
        min_bc = std::min({min_bc, p.p_bc, p.p_cb});
      }
  o.check(min_bc >= 2 - 1e-9, "min(P_BC, P_CB) on 50^3 grid = %.12f >= 2 - 1e-9", min_bc);

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0, 1);
  double worst_period = 0.0;
  double worst_mirror = 0.0;
  double worst_tsym = 0.0;
  double worst_phase = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const double a = 6 * u(rng);
    const double t = u(rng);
    const double x = pi * u(rng);
    const auto base = steering_profile(StateParams::make(a, x, t));
    const auto shift = steering_profile(StateParams::make(a, x + pi / 2, t));
    const auto left = steering_profile(StateParams::make(a, pi / 4 + x, t));
    const auto right = steering_profile(StateParams::make(a, pi / 4 - x, t));
    for (auto pair : kAllPairs) {
      worst_period = std::max(worst_period, std::abs(base.value(pair) - shift.value(pair)));
      worst_mirror = std::max(worst_mirror, std::abs(left.value(pair) - right.value(pair)));
    }
    const double f = concurrence_fill(StateParams::make(a, x, t));
    worst_tsym = std::max(worst_tsym, std::abs(f - concurrence_fill(StateParams::make(a, x, 1 - t))));
    worst_phase = std::max(worst_phase, std::abs(f - concurrence_fill(StateParams::make(a, 2 * pi * u(rng), t))));
  }
  o.check(worst_period <= 1e-12, "P(phi) = P(phi + pi/2): max |diff| %.3g", worst_period);
  o.check(worst_mirror <= 1e-12, "P(pi/4 + x) = P(pi/4 - x): max |diff| %.3g", worst_mirror);
  o.check(worst_tsym <= 1e-12, "fill(T) = fill(1 - T): max |diff| %.3g", worst_tsym);
  o.check(worst_phase <= 1e-12, "fill independent of phi: max |diff| %.3g", worst_phase);

  double worst_excess = -1e300;
  for (int k = 0; k < 10000; ++k) {
    const auto s = oracle::random_state(rng);
    double sq[3];
    for (int q = 0; q < 3; ++q) sq[q] = std::pow(concurrence_one_vs_pair(s, static_cast<Qubit>(q + 1)), 2);
    worst_excess = std::max({worst_excess, sq[0] - sq[1] - sq[2], sq[1] - sq[0] - sq[2], sq[2] - sq[0] - sq[1]});
  }
  o.check(worst_excess <= 1e-12, "triangle inequalities on 1e4 random pure states: max s_i - s_j - s_k = %.3g",
          worst_excess);

  const double secs = seconds_since(t0);
  o.check(secs < 120, "grid-suite runtime %.2f s < 120 s", secs);
  return o;
}

Outcome locc_monotonicity() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto mc = locc_monte_carlo(100000, 7);
  o.check(mc.min_deficit >= -kDeficitFlag,
          "Monte Carlo, 1e5 samples (seed 7): min deficit %.3g, mean %.4f, flagged %llu, argmin sample %llu",
          mc.min_deficit, mc.mean_deficit, static_cast<unsigned long long>(mc.flagged),
          static_cast<unsigned long long>(mc.argmin.index));
  const auto grid = locc_grid_search(9);
  o.check(grid.min_deficit >= -kDeficitFlag, "coarse grid, %llu points: min deficit %.3g",
          static_cast<unsigned long long>(grid.samples), grid.min_deficit);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(-pi, pi);
  double worst_unitary = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const auto p = oracle::random_params(rng);
    const double t = ang(rng);
    const double t2 = k % 2 ? t : std::remainder(pi - t, 2 * pi);
    const PovmParams povm{t, t2, ang(rng), ang(rng), qubit_from_index(k % 3 + 1)};
    worst_unitary = std::max(worst_unitary, std::abs(locc_fill_deficit(prepare_state(p), povm)));
  }
  o.check(worst_unitary <= 1e-12, "unitary-proportional outcomes, 1e4 samples: max |deficit| %.3g", worst_unitary);
  const double secs = seconds_since(t0);
  o.check(secs < 300, "runtime %.2f s < 300 s", secs);
  return o;
}

Outcome vacuum_limit() {
  Outcome o;
  for (double phi : {0.0, 0.7, 2.5}) {
    for (double t : {0.0, 0.3, 0.5, 1.0}) {
      const auto p = StateParams::make(0, phi, t);
      const auto prof = steering_profile(p);
      double worst = 0.0;
      for (auto pair : kAllPairs) worst = std::max(worst, std::abs(prof.value(pair) - 2.0));
      o.check(worst <= 1e-12 && prof.config == Configuration::A && classify_state(p) == StateClass::Product,
              "phi = %.1f, T = %.1f: max |P - 2| = %.3g, config %s, class %s", phi, t, worst,
              std::string(to_string(prof.config)).c_str(), std::string(to_string(classify_state(p))).c_str());
    }
  }
  return o;
}

}  // namespace

int main() {
  report(1, "concurrence fill golden values", fill_golden);
  report(2, "GHZ, W and large-amplitude fills", reference_states);
  report(3, "steering golden point", steering_golden);
  report(4, "steering boundary roots and configuration sequences", boundary_roots);
  report(5, "oracle-equivalence suites", oracle_suites);
  report(6, "global grid properties", global_properties);
  report(7, "LOCC monotonicity of the fill", locc_monotonicity);
  report(8, "vacuum limit", vacuum_limit);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
