#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>

namespace tristeer {

using cplx = std::complex<double>;

/// Degenerate-case threshold for exact parameter inputs.
inline constexpr double kZeroTolerance = 1e-12;

enum class Qubit : int { First = 1, Second = 2, Third = 3 };

constexpr int index_of(Qubit q) { return static_cast<int>(q); }

/// Throws InvalidArgument unless idx is 1, 2 or 3.
Qubit qubit_from_index(int idx);

/// Interaction triple (|alpha|, phi, T) indexing the prepared state family.
///
/// phi is stored as given; every formula consumes it through reduced_phi(),
/// which maps it into [0, 2*pi).
struct StateParams {
  double alpha_mag = 0.0;
  double phi = 0.0;
  double transmissivity = 0.0;

  /// Validated construction; throws InvalidArgument on |alpha| < 0,
  /// T outside [0, 1] or non-finite values.
  static StateParams make(double alpha_mag, double phi, double transmissivity);

  double reduced_phi() const;
  cplx alpha() const;
  /// Beam-splitter mixing angle with cos^2(theta) = T.
  double theta() const;
};

void validate(const StateParams& params);

struct VopsAmplitudes {
  cplx omega0;
  cplx omega1;
};

/// Index of |q1 q2 q3> in the fixed basis order |000>, |001>, ..., |111>.
constexpr std::size_t basis_index(int q1, int q2, int q3) {
  return static_cast<std::size_t>(4 * q1 + 2 * q2 + q3);
}

class ThreeQubitPureState {
 public:
  static constexpr std::size_t kDim = 8;
  using Amplitudes = std::array<cplx, kDim>;

  /// |000>.
  ThreeQubitPureState();

  /// Requires unit norm within 1e-12; throws InvalidArgument otherwise.
  static ThreeQubitPureState from_amplitudes(const Amplitudes& amps);
  /// Rescales to unit norm; throws ZeroProbability on a null vector.
  static ThreeQubitPureState normalized(const Amplitudes& amps);

  static ThreeQubitPureState ghz();
  static ThreeQubitPureState w();

  const Amplitudes& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  cplx amplitude(int q1, int q2, int q3) const { return amps_[basis_index(q1, q2, q3)]; }
  double norm_squared() const;

 private:
  explicit ThreeQubitPureState(const Amplitudes& amps) : amps_(amps) {}
  Amplitudes amps_;
};

/// |<a|b>|^2.
double fidelity(const ThreeQubitPureState& a, const ThreeQubitPureState& b);

enum class StateClass { Product, BiseparableQubit2, BiseparableQubit3, Nonbiseparable };

std::string_view to_string(StateClass c);
StateClass state_class_from_string(std::string_view s);

/// Normalized vacuum--one-photon superposition produced by the scissors stage.
VopsAmplitudes vops_amplitudes(const StateParams& params);

/// c0|000> + c1|100> + c2|010> + c3|001> with c0 = w0, c1 = w1/sqrt2,
/// c2 = -w1 sqrt(T/2), c3 = w1 sqrt((1-T)/2).
ThreeQubitPureState prepare_state(const StateParams& params);

StateClass classify_state(const StateParams& params);

}  // namespace tristeer
