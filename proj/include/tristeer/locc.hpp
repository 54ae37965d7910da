#pragma once

#include <cstdint>
#include <vector>

#include "tristeer/entanglement.hpp"
#include "tristeer/qstate.hpp"

namespace tristeer {

/// Angles of a binary-outcome measurement on one qubit.
struct PovmParams {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  Qubit target = Qubit::First;
};

/// Throws InvalidArgument for non-finite angles or angles outside [-pi, pi].
void validate(const PovmParams& p);

struct Povm {
  Matrix2c x1;
  Matrix2c x2;
};

inline constexpr double kCompletenessTolerance = 1e-12;
/// Branch probabilities below this are treated as impossible outcomes.
inline constexpr double kBranchCutoff = 1e-14;
/// Deficits below -kDeficitFlag are flagged for review.
inline constexpr double kDeficitFlag = 1e-9;

/// X1 = D1 V, X2 = D2 V with D1 = diag(sin t1, sin t2), D2 = diag(cos t1, cos t2)
/// and V = [[cos k1, -e^{i k2} sin k1], [sin k1, e^{i k2} cos k1]].
Povm build_povm(const PovmParams& p);

/// <psi| X^dag X |psi> with X acting on `target`.
double branch_probability(const ThreeQubitPureState& state, const Matrix2c& x, Qubit target);

struct Branch {
  ThreeQubitPureState state;
  double probability = 0.0;
};

/// Normalized post-measurement state; throws ZeroProbability when p < kBranchCutoff.
Branch apply_povm_branch(const ThreeQubitPureState& state, const Matrix2c& x, Qubit target);

/// F(psi) - sum_i p_i F(psi_i); impossible branches contribute nothing.
double locc_fill_deficit(const ThreeQubitPureState& state, const PovmParams& p);

struct LoccSample {
  std::uint64_t index = 0;
  StateParams state;
  PovmParams povm;
  double deficit = 0.0;
};

struct LoccSummary {
  std::uint64_t samples = 0;
  double min_deficit = 0.0;
  double mean_deficit = 0.0;
  LoccSample argmin;
  std::uint64_t flagged = 0;

  bool passed() const { return min_deficit >= -kDeficitFlag; }
};

/// Sample `index` of the seeded stream: |alpha| in [0, 6], phi in [0, pi],
/// T in [0, 1], POVM angles in [-pi, pi], target cycling 1, 2, 3.
LoccSample locc_sample(std::uint64_t seed, std::uint64_t index);

/// Deficits of samples 0..n-1. The result is independent of `workers`.
LoccSummary locc_monte_carlo(std::uint64_t samples, std::uint64_t seed, unsigned workers = 0);

/// Family points used by the coarse grid.
std::vector<StateParams> locc_grid_states();

/// Every POVM angle on `points_per_angle` equally spaced values over
/// [-pi, pi], for each grid state and each target qubit.
LoccSummary locc_grid_search(int points_per_angle = 9, unsigned workers = 0);

}  // namespace tristeer
