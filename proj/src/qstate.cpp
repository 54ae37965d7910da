#include "tristeer/qstate.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tristeer/errors.hpp"

namespace tristeer {

namespace {

constexpr double kNormTolerance = 1e-12;

double squared_norm(const ThreeQubitPureState::Amplitudes& amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

}  // namespace

Qubit qubit_from_index(int idx) {
  if (idx < 1 || idx > 3) {
    throw InvalidArgument("qubit index must be 1, 2 or 3, got " + std::to_string(idx));
  }
  return static_cast<Qubit>(idx);
}

void validate(const StateParams& p) {
  if (!std::isfinite(p.alpha_mag) || !std::isfinite(p.phi) || !std::isfinite(p.transmissivity)) {
    throw InvalidArgument("state parameters must be finite");
  }
  if (p.alpha_mag < 0.0) throw InvalidArgument("|alpha| must be nonnegative");
  if (p.transmissivity < 0.0 || p.transmissivity > 1.0) {
    throw InvalidArgument("transmissivity must lie in [0, 1]");
  }
}

StateParams StateParams::make(double alpha_mag, double phi, double transmissivity) {
  StateParams p{alpha_mag, phi, transmissivity};
  validate(p);
  return p;
}

double StateParams::reduced_phi() const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

cplx StateParams::alpha() const { return std::polar(alpha_mag, reduced_phi()); }

double StateParams::theta() const { return std::acos(std::sqrt(transmissivity)); }

ThreeQubitPureState::ThreeQubitPureState() : amps_{} { amps_[0] = 1.0; }

ThreeQubitPureState ThreeQubitPureState::from_amplitudes(const Amplitudes& amps) {
  const double n2 = squared_norm(amps);
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kNormTolerance) {
    throw InvalidArgument("three-qubit amplitudes are not normalized");
  }
  return ThreeQubitPureState(amps);
}

ThreeQubitPureState ThreeQubitPureState::normalized(const Amplitudes& amps) {
  const double n2 = squared_norm(amps);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw ZeroProbability("cannot normalize a null state");
  const double inv = 1.0 / std::sqrt(n2);
  Amplitudes out = amps;
  for (auto& a : out) a *= inv;
  return ThreeQubitPureState(out);
}

ThreeQubitPureState ThreeQubitPureState::ghz() {
  Amplitudes a{};
  a[basis_index(0, 0, 0)] = std::numbers::sqrt2 / 2.0;
  a[basis_index(1, 1, 1)] = std::numbers::sqrt2 / 2.0;
  return ThreeQubitPureState(a);
}

ThreeQubitPureState ThreeQubitPureState::w() {
  Amplitudes a{};
  const double v = 1.0 / std::sqrt(3.0);
  a[basis_index(1, 0, 0)] = v;
  a[basis_index(0, 1, 0)] = v;
  a[basis_index(0, 0, 1)] = v;
  return ThreeQubitPureState(a);
}

double ThreeQubitPureState::norm_squared() const { return squared_norm(amps_); }

double fidelity(const ThreeQubitPureState& a, const ThreeQubitPureState& b) {
  cplx overlap = 0.0;
  for (std::size_t i = 0; i < ThreeQubitPureState::kDim; ++i) overlap += std::conj(a[i]) * b[i];
  return std::norm(overlap);
}

std::string_view to_string(StateClass c) {
  switch (c) {
    case StateClass::Product: return "Product";
    case StateClass::BiseparableQubit2: return "BiseparableQubit2";
    case StateClass::BiseparableQubit3: return "BiseparableQubit3";
    case StateClass::Nonbiseparable: return "Nonbiseparable";
  }
  return "Unknown";
}

StateClass state_class_from_string(std::string_view s) {
  for (auto c : {StateClass::Product, StateClass::BiseparableQubit2, StateClass::BiseparableQubit3,
                 StateClass::Nonbiseparable}) {
    if (to_string(c) == s) return c;
  }
  throw InvalidArgument("unknown state class '" + std::string(s) + "'");
}

VopsAmplitudes vops_amplitudes(const StateParams& params) {
  validate(params);
  const double scale = 1.0 / std::sqrt(1.0 + params.alpha_mag * params.alpha_mag);
  return {cplx(scale, 0.0), params.alpha() * scale};
}

ThreeQubitPureState prepare_state(const StateParams& params) {
  const auto [w0, w1] = vops_amplitudes(params);
  const double t = params.transmissivity;
  ThreeQubitPureState::Amplitudes a{};
  a[basis_index(0, 0, 0)] = w0;
  a[basis_index(1, 0, 0)] = w1 * (std::numbers::sqrt2 / 2.0);
  a[basis_index(0, 1, 0)] = -w1 * std::sqrt(t / 2.0);
  a[basis_index(0, 0, 1)] = w1 * std::sqrt((1.0 - t) / 2.0);
  return ThreeQubitPureState::normalized(a);
}

StateClass classify_state(const StateParams& params) {
  validate(params);
  if (params.alpha_mag <= kZeroTolerance) return StateClass::Product;
  if (params.transmissivity <= kZeroTolerance) return StateClass::BiseparableQubit2;
  if (params.transmissivity >= 1.0 - kZeroTolerance) return StateClass::BiseparableQubit3;
  return StateClass::Nonbiseparable;
}

}  // namespace tristeer
