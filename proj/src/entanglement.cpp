#include "tristeer/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tristeer/errors.hpp"

namespace tristeer {

namespace {

const double kFillScale = 4.0 / std::sqrt(3.0);

// The two qubits left after removing `single`, ascending.
std::array<int, 2> pair_of(Qubit single) {
  switch (single) {
    case Qubit::First: return {2, 3};
    case Qubit::Second: return {1, 3};
    case Qubit::Third: return {1, 2};
  }
  throw InvalidArgument("bad qubit");
}

std::size_t index_with(int qa, int va, int qb, int vb, int qc, int vc) {
  int bits[4] = {0, 0, 0, 0};
  bits[qa] = va;
  bits[qb] = vb;
  bits[qc] = vc;
  return basis_index(bits[1], bits[2], bits[3]);
}

// Eigenvalues of a 2x2 Hermitian matrix [[a, b], [b*, d]], largest first.
// The small one is taken as det / largest to keep it accurate when tiny.
SchmidtPair hermitian_eigenvalues(double a, double d, cplx b) {
  const double half_tr = 0.5 * (a + d);
  const double disc = std::hypot(0.5 * (a - d), std::abs(b));
  const double l1 = half_tr + disc;
  const double det = a * d - std::norm(b);
  const double l2 = l1 > 0.0 ? std::max(0.0, det / l1) : 0.0;
  return {l1, l2};
}

}  // namespace

CoefficientMatrix coefficient_matrix(const ThreeQubitPureState& state, Qubit single) {
  const int q = index_of(single);
  const auto [first, second] = pair_of(single);
  CoefficientMatrix m;
  for (int row = 0; row < 2; ++row) {
    for (int col = 0; col < 4; ++col) {
      m(row, col) = state[index_with(q, row, first, col & 1, second, (col >> 1) & 1)];
    }
  }
  return m;
}

Matrix2c reduced_density(const ThreeQubitPureState& state, Qubit keep) {
  const int q = index_of(keep);
  const auto [first, second] = pair_of(keep);
  Matrix2c rho = Matrix2c::Zero();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      cplx acc = 0.0;
      for (int u = 0; u < 2; ++u) {
        for (int v = 0; v < 2; ++v) {
          acc += state[index_with(q, r, first, u, second, v)] *
                 std::conj(state[index_with(q, c, first, u, second, v)]);
        }
      }
      rho(r, c) = acc;
    }
  }
  return rho;
}

SchmidtPair schmidt_pair(const ThreeQubitPureState& state, Qubit single) {
  const CoefficientMatrix m = coefficient_matrix(state, single);
  const Matrix2c mm = m * m.adjoint();
  return hermitian_eigenvalues(mm(0, 0).real(), mm(1, 1).real(), mm(0, 1));
}

double schmidt_weight(const SchmidtPair& pair) {
  // On l1 + l2 = 1 the radicand 2(l1^2 + l2^2) - 1 equals (l1 - l2)^2, and
  // 1 - sqrt(r) = (1 - r) / (1 + sqrt(r)) with 1 - r = 4 l1 l2. Written this
  // way the weight keeps full relative precision near product states.
  const double s = pair.lambda1 + pair.lambda2;
  const double l1 = pair.lambda1 / s;
  const double l2 = pair.lambda2 / s;
  const double root = std::abs(l1 - l2);
  return 4.0 * l1 * l2 / (1.0 + root);
}

double concurrence_from_weight(double weight) {
  if (!(weight >= -1e-12 && weight <= 1.0 + 1e-12)) {
    throw DomainError("Schmidt weight " + std::to_string(weight) + " outside [0, 1]");
  }
  const double y = std::clamp(weight, 0.0, 1.0);
  return std::sqrt(y * (2.0 - y));
}

double concurrence_one_vs_pair(const ThreeQubitPureState& state, Qubit single) {
  const Matrix2c rho = reduced_density(state, single);
  const double tr = rho(0, 0).real() + rho(1, 1).real();
  // For a unit-trace 2x2 matrix 1 - Tr(rho^2) = 2 det(rho).
  const double det = rho(0, 0).real() * rho(1, 1).real() - std::norm(rho(0, 1));
  const double linear_entropy = std::max(0.0, 2.0 * det / (tr * tr));
  return std::sqrt(2.0 * linear_entropy);
}

ConcurrenceTriangle triangle_from_sides(double s1, double s2, double s3) {
  ConcurrenceTriangle t{s1, s2, s3, s1 + s2 + s3, 0.0, 0.0};
  const double l = t.perimeter;
  double f[3] = {l - 2.0 * s1, l - 2.0 * s2, l - 2.0 * s3};
  for (double& x : f) {
    if (x < -kTriangleSlack) {
      throw TriangleViolation("squared concurrences (" + std::to_string(s1) + ", " +
                              std::to_string(s2) + ", " + std::to_string(s3) +
                              ") violate the triangle inequality");
    }
    x = std::max(x, 0.0);
  }
  const double radicand = l * f[0] * f[1] * f[2];
  t.area = 0.25 * std::sqrt(std::max(radicand, 0.0));
  t.fill = std::sqrt(kFillScale * t.area);
  return t;
}

ConcurrenceTriangle concurrence_triangle(const ThreeQubitPureState& state) {
  double s[3];
  for (int q = 1; q <= 3; ++q) {
    const double c = concurrence_one_vs_pair(state, static_cast<Qubit>(q));
    s[q - 1] = c * c;
  }
  // Two zero-sided sides leave l - 2 s_j = +-(s_i - s_k) round-off of opposite
  // signs, so clamping yields exactly zero area for the degenerate line.
  return triangle_from_sides(s[0], s[1], s[2]);
}

double concurrence_fill(const ThreeQubitPureState& state) { return concurrence_triangle(state).fill; }

double concurrence_fill(const StateParams& params) { return concurrence_fill(prepare_state(params)); }

namespace family {

double omega(const StateParams& p) {
  validate(p);
  const double a2 = p.alpha_mag * p.alpha_mag;
  return a2 / (1.0 + a2);
}

SchmidtPair schmidt_pair(const StateParams& p, Qubit single) {
  validate(p);
  const double a2 = p.alpha_mag * p.alpha_mag;
  const double a4 = a2 * a2;
  const double t = p.transmissivity;
  double radicand = 0.0;
  switch (single) {
    case Qubit::First: radicand = 2.0 * a2 + 1.0; break;
    case Qubit::Second: radicand = (1.0 - t) * (1.0 - t) * a4 + 2.0 * a2 + 1.0; break;
    case Qubit::Third: radicand = t * t * a4 + 2.0 * a2 + 1.0; break;
  }
  const double half_gap = std::sqrt(radicand) / (2.0 * (a2 + 1.0));
  return {0.5 + half_gap, 0.5 - half_gap};
}

double schmidt_weight(const StateParams& p, Qubit single) {
  const SchmidtPair l = schmidt_pair(p, single);
  return 1.0 - (l.lambda1 - l.lambda2);
}

double concurrence(const StateParams& p, Qubit single) {
  const double w = omega(p);
  const double t = p.transmissivity;
  switch (single) {
    case Qubit::First: return w;
    case Qubit::Second: return w * std::sqrt(t * (2.0 - t));
    case Qubit::Third: return w * std::sqrt(1.0 - t * t);
  }
  throw InvalidArgument("bad qubit");
}

double triangle_area(const StateParams& p) {
  const double w = omega(p);
  const double t = p.transmissivity;
  const double tt = t * (1.0 - t);
  return w * w * w * w * tt * std::sqrt(1.0 + tt);
}

double fill(const StateParams& p) { return std::sqrt(kFillScale * triangle_area(p)); }

}  // namespace family

}  // namespace tristeer
