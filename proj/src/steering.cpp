#include "tristeer/steering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tristeer/errors.hpp"

namespace tristeer {

namespace {

int bit_of(Qubit q, std::size_t basis) { return static_cast<int>((basis >> (3 - index_of(q))) & 1U); }

cplx pauli_element(Axis axis, int row, int col) {
  switch (axis) {
    case Axis::X: return row != col ? cplx(1.0) : cplx(0.0);
    case Axis::Y:
      if (row == col) return 0.0;
      return row == 0 ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
    case Axis::Z: return row != col ? cplx(0.0) : cplx(row == 0 ? 1.0 : -1.0);
  }
  return 0.0;
}

std::array<double, 3>& variances_of(MomentTable& m, Party p) {
  switch (p) {
    case Party::A: return m.var_a;
    case Party::B: return m.var_b;
    case Party::C: return m.var_c;
  }
  throw InvalidArgument("bad party");
}

}  // namespace

DensityMatrix8 density_matrix(const ThreeQubitPureState& state) {
  Eigen::Matrix<cplx, 8, 1> psi;
  for (std::size_t i = 0; i < 8; ++i) psi(static_cast<Eigen::Index>(i)) = state[i];
  return psi * psi.adjoint();
}

cplx expectation(const DensityMatrix8& rho, std::span<const PauliObservable> factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      if (factors[i].qubit == factors[j].qubit) throw SameQubit("Pauli factors must act on distinct qubits");
    }
  }
  cplx acc = 0.0;
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      cplx element = 1.0;
      for (int q = 1; q <= 3 && element != cplx(0.0); ++q) {
        const auto qubit = static_cast<Qubit>(q);
        const auto it = std::find_if(factors.begin(), factors.end(),
                                     [&](const PauliObservable& o) { return o.qubit == qubit; });
        const int rb = bit_of(qubit, r);
        const int cb = bit_of(qubit, c);
        if (it == factors.end()) {
          if (rb != cb) element = 0.0;
        } else {
          element *= pauli_element(it->axis, rb, cb);
        }
      }
      if (element != cplx(0.0)) {
        acc += element * rho(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r));
      }
    }
  }
  return acc;
}

double pauli_moment(const DensityMatrix8& rho, PauliObservable obs) {
  const PauliObservable f[] = {obs};
  return expectation(rho, f).real();
}

double pauli_cross_moment(const DensityMatrix8& rho, PauliObservable o1, PauliObservable o2) {
  if (o1.qubit == o2.qubit) throw SameQubit("cross moment needs observables on distinct qubits");
  const PauliObservable f[] = {o1, o2};
  return expectation(rho, f).real();
}

double MomentTable::variance(Party p, int axis) const {
  return variances_of(const_cast<MomentTable&>(*this), p)[static_cast<std::size_t>(axis)];
}

double MomentTable::covariance(Party p, Party q, int axis) const {
  if (p == q) throw SameQubit("covariance needs two parties");
  const auto i = static_cast<std::size_t>(axis);
  const auto lo = std::min(p, q);
  const auto hi = std::max(p, q);
  if (lo == Party::A && hi == Party::B) return cov_ab[i];
  if (lo == Party::A && hi == Party::C) return cov_ac[i];
  return cov_bc[i];
}

double MomentTable::max_abs_difference(const MomentTable& o) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (auto [x, y] : {std::pair{var_a[i], o.var_a[i]}, {var_b[i], o.var_b[i]}, {var_c[i], o.var_c[i]},
                        {cov_ab[i], o.cov_ab[i]}, {cov_ac[i], o.cov_ac[i]}, {cov_bc[i], o.cov_bc[i]}}) {
      worst = std::max(worst, std::abs(x - y));
    }
  }
  return worst;
}

MomentTable numeric_moments(const DensityMatrix8& rho) {
  MomentTable m;
  for (int i = 0; i < 3; ++i) {
    const auto axis = static_cast<Axis>(i);
    const PauliObservable a{Qubit::First, axis};
    const PauliObservable b{Qubit::Second, axis};
    const PauliObservable c{Qubit::Third, axis};
    const double ea = pauli_moment(rho, a);
    const double eb = pauli_moment(rho, b);
    const double ec = pauli_moment(rho, c);
    const auto k = static_cast<std::size_t>(i);
    // Pauli observables square to the identity.
    m.var_a[k] = 1.0 - ea * ea;
    m.var_b[k] = 1.0 - eb * eb;
    m.var_c[k] = 1.0 - ec * ec;
    m.cov_ab[k] = pauli_cross_moment(rho, a, b) - ea * eb;
    m.cov_ac[k] = pauli_cross_moment(rho, a, c) - ea * ec;
    m.cov_bc[k] = pauli_cross_moment(rho, b, c) - eb * ec;
  }
  return m;
}

MomentTable closed_form_moments(const StateParams& p) {
  validate(p);
  const double a2 = p.alpha_mag * p.alpha_mag;
  const double a4 = a2 * a2;
  const double t = p.transmissivity;
  const double c = std::cos(2.0 * p.reduced_phi());
  const double den = (a2 + 1.0) * (a2 + 1.0);

  MomentTable m;
  m.var_a = {(a4 + (1.0 - c) * a2 + 1.0) / den, (a4 + (1.0 + c) * a2 + 1.0) / den, (a4 + 2.0 * a2) / den};
  m.var_b = {(a4 + (2.0 - t - t * c) * a2 + 1.0) / den, (a4 + (2.0 - t + t * c) * a2 + 1.0) / den,
             ((2.0 * t - t * t) * a4 + 2.0 * t * a2) / den};
  m.var_c = {(a4 + (1.0 + t - (1.0 - t) * c) * a2 + 1.0) / den,
             (a4 + (1.0 + t + (1.0 - t) * c) * a2 + 1.0) / den,
             ((1.0 - t * t) * a4 + 2.0 * (1.0 - t) * a2) / den};

  const double minus = a4 - a2 * c;
  const double plus = a4 + a2 * c;
  const double rt = std::sqrt(t);
  const double rr = std::sqrt(1.0 - t);
  const double rtr = std::sqrt(t * (1.0 - t));
  m.cov_ab = {-rt * minus / den, -rt * plus / den, -t * a4 / den};
  m.cov_ac = {rr * minus / den, rr * plus / den, -(1.0 - t) * a4 / den};
  m.cov_bc = {-rtr * minus / den, -rtr * plus / den, -t * (1.0 - t) * a4 / den};
  return m;
}

VarianceReport variances_covariances(const StateParams& params) {
  return {closed_form_moments(params), numeric_moments(density_matrix(prepare_state(params)))};
}

double steering_weight(double var_steerer, double covariance, double var_steered) {
  if (var_steerer > kVarianceTolerance) return -covariance / var_steerer;
  if (std::abs(covariance) > kVarianceTolerance) return -var_steered / (2.0 * covariance);
  return 0.0;
}

double steering_functional(const MomentTable& m, Party steerer, Party steered) {
  if (steerer == steered) throw SameQubit("a party cannot steer itself");
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double vs = m.variance(steerer, i);
    const double vt = m.variance(steered, i);
    const double cov = m.covariance(steerer, steered, i);
    const double w = steering_weight(vs, cov, vt);
    total += w * w * vs + 2.0 * w * cov + vt;
  }
  return total;
}

double steering_functional(const StateParams& params, Party steerer, Party steered) {
  return steering_functional(numeric_moments(density_matrix(prepare_state(params))), steerer, steered);
}

Party steerer_of(SteeringPair pair) {
  switch (pair) {
    case SteeringPair::AB:
    case SteeringPair::AC: return Party::A;
    case SteeringPair::BA:
    case SteeringPair::BC: return Party::B;
    case SteeringPair::CA:
    case SteeringPair::CB: return Party::C;
  }
  throw InvalidArgument("bad pair");
}

Party steered_of(SteeringPair pair) {
  switch (pair) {
    case SteeringPair::BA:
    case SteeringPair::CA: return Party::A;
    case SteeringPair::AB:
    case SteeringPair::CB: return Party::B;
    case SteeringPair::AC:
    case SteeringPair::BC: return Party::C;
  }
  throw InvalidArgument("bad pair");
}

std::string_view to_string(SteeringPair pair) {
  static constexpr std::string_view names[] = {"AB", "BA", "AC", "CA", "BC", "CB"};
  return names[static_cast<int>(pair)];
}

SteeringPair steering_pair_from_string(std::string_view s) {
  for (auto p : kAllPairs) {
    if (to_string(p) == s) return p;
  }
  throw InvalidArgument("unknown steering pair '" + std::string(s) + "'");
}

std::string_view to_string(Configuration c) {
  static constexpr std::string_view names[] = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "unlisted"};
  return names[static_cast<int>(c)];
}

Configuration configuration_from_string(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(Configuration::Unlisted); ++i) {
    if (to_string(static_cast<Configuration>(i)) == s) return static_cast<Configuration>(i);
  }
  throw InvalidArgument("unknown configuration '" + std::string(s) + "'");
}

double SteeringProfile::value(SteeringPair pair) const {
  switch (pair) {
    case SteeringPair::AB: return p_ab;
    case SteeringPair::BA: return p_ba;
    case SteeringPair::AC: return p_ac;
    case SteeringPair::CA: return p_ca;
    case SteeringPair::BC: return p_bc;
    case SteeringPair::CB: return p_cb;
  }
  throw InvalidArgument("bad pair");
}

Configuration classify_configuration(const SteeringProfile& profile) {
  // Steering flags in the order AB, BA, AC, CA, BC, CB.
  struct Row {
    std::array<bool, 6> steers;
    Configuration label;
  };
  static constexpr Row table[] = {
      {{false, false, false, false, false, false}, Configuration::A},
      {{true, true, false, false, false, false}, Configuration::B},
      {{true, false, false, false, false, false}, Configuration::C},
      {{true, true, true, false, false, false}, Configuration::D},
      {{true, true, true, true, false, false}, Configuration::E},
      {{true, false, true, false, false, false}, Configuration::F},
      {{false, false, true, false, false, false}, Configuration::G},
      {{false, false, true, true, false, false}, Configuration::H},
      {{true, false, true, true, false, false}, Configuration::I},
  };
  std::array<bool, 6> steers{};
  for (std::size_t k = 0; k < kAllPairs.size(); ++k) {
    const double v = profile.value(kAllPairs[k]);
    if (!std::isfinite(v)) throw InvalidArgument("steering functional is not finite");
    steers[k] = v < steering_bound() - kClassTolerance;
  }
  for (const auto& row : table) {
    if (row.steers == steers) return row.label;
  }
  return Configuration::Unlisted;
}

SteeringProfile steering_profile(const MomentTable& m) {
  SteeringProfile p;
  p.p_ab = steering_functional(m, Party::A, Party::B);
  p.p_ba = steering_functional(m, Party::B, Party::A);
  p.p_ac = steering_functional(m, Party::A, Party::C);
  p.p_ca = steering_functional(m, Party::C, Party::A);
  p.p_bc = steering_functional(m, Party::B, Party::C);
  p.p_cb = steering_functional(m, Party::C, Party::B);
  p.config = classify_configuration(p);
  return p;
}

SteeringProfile steering_profile(const StateParams& params) {
  return steering_profile(numeric_moments(density_matrix(prepare_state(params))));
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Alpha: return "alpha";
    case SweepAxis::Phi: return "phi";
    case SweepAxis::Transmissivity: return "T";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(std::string_view s) {
  if (s == "alpha") return SweepAxis::Alpha;
  if (s == "phi") return SweepAxis::Phi;
  if (s == "T") return SweepAxis::Transmissivity;
  throw InvalidArgument("unknown sweep axis '" + std::string(s) + "' (expected alpha, phi or T)");
}

StateParams with_axis(StateParams params, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::Alpha: params.alpha_mag = value; break;
    case SweepAxis::Phi: params.phi = value; break;
    case SweepAxis::Transmissivity: params.transmissivity = value; break;
  }
  validate(params);
  return params;
}

std::vector<double> sign_change_roots(const std::function<double(double)>& f, double lo, double hi,
                                      const BoundaryOptions& options) {
  if (!(hi > lo)) throw InvalidArgument("root search interval must have hi > lo");
  if (options.grid_intervals < 1) throw InvalidArgument("root search grid needs at least one interval");
  if (!(options.tolerance > 0.0)) throw InvalidArgument("bisection tolerance must be positive");

  const int n = options.grid_intervals;
  std::vector<double> xs(static_cast<std::size_t>(n) + 1);
  std::vector<double> ys(xs.size());
  for (int k = 0; k <= n; ++k) {
    xs[k] = k == n ? hi : lo + (hi - lo) * k / n;
    ys[k] = f(xs[k]);
  }

  std::vector<double> roots;
  for (int k = 0; k < n; ++k) {
    if (ys[k] == 0.0) {
      if (k > 0 && ((ys[k - 1] < 0.0 && ys[k + 1] > 0.0) || (ys[k - 1] > 0.0 && ys[k + 1] < 0.0))) {
        roots.push_back(xs[k]);
      }
      continue;
    }
    if (ys[k + 1] == 0.0 || (ys[k] < 0.0) == (ys[k + 1] < 0.0)) continue;

    double a = xs[k];
    double b = xs[k + 1];
    const bool rising = ys[k] < 0.0;
    while (b - a > options.tolerance) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double fm = f(mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if ((fm < 0.0) == rising) {
        a = mid;
      } else {
        b = mid;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  return roots;
}

std::vector<double> find_boundary(const StateParams& fixed, SweepAxis axis, double lo, double hi,
                                  SteeringPair pair, const BoundaryOptions& options) {
  const Party s = steerer_of(pair);
  const Party t = steered_of(pair);
  auto f = [&](double x) { return steering_functional(with_axis(fixed, axis, x), s, t) - steering_bound(); };
  auto roots = sign_change_roots(f, lo, hi, options);
  if (roots.empty()) {
    throw NoRoot("P_" + std::string(to_string(pair)) + " - 2 has no sign change on the " +
                 std::string(to_string(axis)) + " interval [" + std::to_string(lo) + ", " +
                 std::to_string(hi) + "]");
  }
  return roots;
}

ConfigurationSweep sweep_configurations(const StateParams& fixed, SweepAxis axis, double lo, double hi,
                                        const BoundaryOptions& options) {
  ConfigurationSweep out;
  for (auto pair : kAllPairs) {
    const Party s = steerer_of(pair);
    const Party t = steered_of(pair);
    auto f = [&](double x) { return steering_functional(with_axis(fixed, axis, x), s, t) - steering_bound(); };
    for (double x : sign_change_roots(f, lo, hi, options)) out.crossings.push_back({pair, x});
  }
  std::stable_sort(out.crossings.begin(), out.crossings.end(),
                   [](const Crossing& a, const Crossing& b) { return a.at < b.at; });

  std::vector<double> edges{lo};
  for (const auto& c : out.crossings) edges.push_back(c.at);
  edges.push_back(hi);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    if (!(edges[k + 1] > edges[k])) continue;
    const double mid = 0.5 * (edges[k] + edges[k + 1]);
    const Configuration c = steering_profile(with_axis(fixed, axis, mid)).config;
    if (out.sequence.empty() || out.sequence.back() != c) out.sequence.push_back(c);
  }
  return out;
}

}  // namespace tristeer
