#pragma once

#include <Eigen/Core>

#include "tristeer/qstate.hpp"

namespace tristeer {

/// Squared Schmidt coefficients of a (qubit)-vs-(pair) cut, lambda1 >= lambda2.
struct SchmidtPair {
  double lambda1 = 1.0;
  double lambda2 = 0.0;
};

/// Triangle with sides s_i = C_i(jk)^2 and its concurrence fill.
struct ConcurrenceTriangle {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double perimeter = 0.0;
  double area = 0.0;
  double fill = 0.0;
};

/// Fill threshold separating genuinely tripartite states from the rest.
inline constexpr double kFillTolerance = 1e-12;
/// Heron factors down to this value are treated as round-off and clamped.
inline constexpr double kTriangleSlack = 1e-9;

using CoefficientMatrix = Eigen::Matrix<cplx, 2, 4>;
using Matrix2c = Eigen::Matrix<cplx, 2, 2>;

/// Row = value of `single`; columns |00>, |10>, |01>, |11> of the remaining
/// pair in ascending qubit order (first qubit of the pair varies fastest).
CoefficientMatrix coefficient_matrix(const ThreeQubitPureState& state, Qubit single);

/// One-qubit reduced density matrix by explicit partial trace.
Matrix2c reduced_density(const ThreeQubitPureState& state, Qubit keep);

SchmidtPair schmidt_pair(const ThreeQubitPureState& state, Qubit single);

/// Y = 1 - sqrt(2(l1^2 + l2^2) - 1).
double schmidt_weight(const SchmidtPair& pair);

/// C = sqrt(Y (2 - Y)); throws DomainError for Y outside [0, 1] beyond 1e-12.
double concurrence_from_weight(double weight);

/// sqrt(2 (1 - Tr rho_i^2)).
double concurrence_one_vs_pair(const ThreeQubitPureState& state, Qubit single);

/// Heron area and fill from the three squared concurrences. Throws
/// TriangleViolation when some l - 2 s_i < -kTriangleSlack.
ConcurrenceTriangle triangle_from_sides(double s1, double s2, double s3);

ConcurrenceTriangle concurrence_triangle(const ThreeQubitPureState& state);
double concurrence_fill(const ThreeQubitPureState& state);
double concurrence_fill(const StateParams& params);

// Closed forms for the prepared family; independent of phi.
namespace family {

/// Omega = |alpha|^2 / (1 + |alpha|^2) = C_1(23).
double omega(const StateParams& p);
SchmidtPair schmidt_pair(const StateParams& p, Qubit single);
double schmidt_weight(const StateParams& p, Qubit single);
double concurrence(const StateParams& p, Qubit single);
/// Omega^4 T (1-T) sqrt(1 + T (1-T)).
double triangle_area(const StateParams& p);
double fill(const StateParams& p);

}  // namespace family

}  // namespace tristeer
