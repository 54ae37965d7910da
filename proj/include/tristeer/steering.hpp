#pragma once

#include <Eigen/Core>

#include <array>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "tristeer/qstate.hpp"

namespace tristeer {

using DensityMatrix8 = Eigen::Matrix<cplx, 8, 8>;

enum class Axis { X = 0, Y = 1, Z = 2 };

struct PauliObservable {
  Qubit qubit;
  Axis axis;
};

/// Alice, Bob and Charlie hold qubits 1, 2 and 3.
enum class Party { A = 1, B = 2, C = 3 };

constexpr Qubit qubit_of(Party p) { return static_cast<Qubit>(static_cast<int>(p)); }

/// rho = |psi><psi| in the |q1 q2 q3> basis order.
DensityMatrix8 density_matrix(const ThreeQubitPureState& state);

/// Tr(O rho) for a tensor product of Paulis on distinct qubits (identity
/// elsewhere). Returns the complex value; for Hermitian rho it is real.
cplx expectation(const DensityMatrix8& rho, std::span<const PauliObservable> factors);

double pauli_moment(const DensityMatrix8& rho, PauliObservable obs);
/// <O1 O2>; throws SameQubit when both act on one qubit.
double pauli_cross_moment(const DensityMatrix8& rho, PauliObservable o1, PauliObservable o2);

/// Variances of the three Pauli settings per party and the same-setting
/// covariances between parties, indexed by axis x, y, z.
struct MomentTable {
  std::array<double, 3> var_a{};
  std::array<double, 3> var_b{};
  std::array<double, 3> var_c{};
  std::array<double, 3> cov_ab{};
  std::array<double, 3> cov_ac{};
  std::array<double, 3> cov_bc{};

  double variance(Party p, int axis) const;
  double covariance(Party p, Party q, int axis) const;
  double max_abs_difference(const MomentTable& other) const;
};

/// delta^2 X = 1 - <X>^2 and C(X, Y) = <XY> - <X><Y> from rho.
MomentTable numeric_moments(const DensityMatrix8& rho);
/// Analytical variances and covariances of the prepared family.
MomentTable closed_form_moments(const StateParams& params);

struct VarianceReport {
  MomentTable closed_form;
  MomentTable numeric;
};

VarianceReport variances_covariances(const StateParams& params);

/// Tolerance of the zero-variance / zero-covariance branch tests.
inline constexpr double kVarianceTolerance = 1e-12;
/// P < 2 - kClassTolerance counts as steering.
inline constexpr double kClassTolerance = 1e-9;

/// Three-branch optimal weight of the steerer's observable.
double steering_weight(double var_steerer, double covariance, double var_steered);

/// sum_i delta^2(w_i X_i^steerer + X_i^steered).
double steering_functional(const MomentTable& moments, Party steerer, Party steered);
double steering_functional(const StateParams& params, Party steerer, Party steered);

/// Minimum of delta^2 sx + delta^2 sy + delta^2 sz over one-qubit states.
constexpr double steering_bound() { return 2.0; }

enum class SteeringPair { AB, BA, AC, CA, BC, CB };

inline constexpr std::array<SteeringPair, 6> kAllPairs = {
    SteeringPair::AB, SteeringPair::BA, SteeringPair::AC,
    SteeringPair::CA, SteeringPair::BC, SteeringPair::CB};

Party steerer_of(SteeringPair pair);
Party steered_of(SteeringPair pair);
std::string_view to_string(SteeringPair pair);
SteeringPair steering_pair_from_string(std::string_view s);

/// Table I rows a..i; Unlisted for steering patterns outside the table.
enum class Configuration { A, B, C, D, E, F, G, H, I, Unlisted };

std::string_view to_string(Configuration c);
Configuration configuration_from_string(std::string_view s);

struct SteeringProfile {
  double p_ab = 2.0;
  double p_ba = 2.0;
  double p_ac = 2.0;
  double p_ca = 2.0;
  double p_bc = 2.0;
  double p_cb = 2.0;
  Configuration config = Configuration::A;

  double value(SteeringPair pair) const;
};

Configuration classify_configuration(const SteeringProfile& profile);

SteeringProfile steering_profile(const MomentTable& moments);
SteeringProfile steering_profile(const StateParams& params);

enum class SweepAxis { Alpha, Phi, Transmissivity };

std::string_view to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(std::string_view s);

/// Copy of `params` with the swept coordinate replaced by `value`.
StateParams with_axis(StateParams params, SweepAxis axis, double value);

struct BoundaryOptions {
  int grid_intervals = 2048;
  double tolerance = 1e-9;
};

/// Roots of f on [lo, hi]: every strict sign change between adjacent points
/// of a uniform grid is refined by bisection. Interior grid points where f
/// is exactly zero between opposite strict signs are roots as they stand.
std::vector<double> sign_change_roots(const std::function<double(double)>& f, double lo, double hi,
                                      const BoundaryOptions& options = {});

/// Roots of P_pair - 2 along one parameter axis. Throws NoRoot if there is
/// no sign change on the grid.
std::vector<double> find_boundary(const StateParams& fixed, SweepAxis axis, double lo, double hi,
                                  SteeringPair pair, const BoundaryOptions& options = {});

struct Crossing {
  SteeringPair pair;
  double at;
};

/// All six boundaries along one axis, merged in increasing order, and the
/// configuration on each open segment between consecutive crossings (read at
/// the segment midpoint, repeats collapsed).
struct ConfigurationSweep {
  std::vector<Crossing> crossings;
  std::vector<Configuration> sequence;
};

ConfigurationSweep sweep_configurations(const StateParams& fixed, SweepAxis axis, double lo, double hi,
                                        const BoundaryOptions& options = {});

}  // namespace tristeer
