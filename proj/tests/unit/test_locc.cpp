#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tristeer/errors.hpp"
#include "tristeer/locc.hpp"

using namespace tristeer;
using std::numbers::pi;

namespace {

PovmParams random_povm(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-pi, pi);
  std::uniform_int_distribution<int> q(1, 3);
  return {u(rng), u(rng), u(rng), u(rng), qubit_from_index(q(rng))};
}

double completeness_residual(const Povm& p) {
  return (p.x1.adjoint() * p.x1 + p.x2.adjoint() * p.x2 - Matrix2c::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(BuildPovm, IdentityOutcome) {
  const auto p = build_povm({pi / 2, pi / 2, 0, 0, Qubit::First});
  EXPECT_LT((p.x1 - Matrix2c::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(p.x2.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BuildPovm, BalancedSplitIsScaledUnitary) {
  const auto p = build_povm({pi / 4, pi / 4, 0.7, -1.1, Qubit::Second});
  EXPECT_LT((p.x1 - p.x2).cwiseAbs().maxCoeff(), 1e-15);
  const Matrix2c u = std::sqrt(2.0) * p.x1;
  EXPECT_LT((u.adjoint() * u - Matrix2c::Identity()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BuildPovm, CompleteOnRandomAngles) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10000; ++k) ASSERT_LT(completeness_residual(build_povm(random_povm(rng))), 1e-12);
}

TEST(BuildPovm, RejectsOutOfRangeAngles) {
  EXPECT_THROW(build_povm({4.0, 0, 0, 0, Qubit::First}), InvalidArgument);
  EXPECT_THROW(build_povm({0, 0, NAN, 0, Qubit::First}), InvalidArgument);
  EXPECT_NO_THROW(build_povm({-pi, pi, -pi, pi, Qubit::Third}));
}

TEST(PovmBranch, IdentityKeepsState) {
  const auto s = prepare_state(StateParams::make(1.3, 0.2, 0.4));
  const auto b = apply_povm_branch(s, Matrix2c::Identity(), Qubit::Second);
  EXPECT_NEAR(b.probability, 1.0, 1e-12);
  EXPECT_NEAR(fidelity(b.state, s), 1.0, 1e-12);
}

TEST(PovmBranch, ImpossibleOutcome) {
  const auto s = prepare_state(StateParams::make(1.3, 0.2, 0.4));
  const auto p = build_povm({pi / 2, pi / 2, 0, 0, Qubit::First});
  EXPECT_NEAR(branch_probability(s, p.x2, Qubit::First), 0.0, 1e-30);
  EXPECT_THROW(apply_povm_branch(s, p.x2, Qubit::First), ZeroProbability);
}

TEST(PovmBranch, MatchesKroneckerOracle) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const auto s = oracle::random_state(rng);
    const auto pp = random_povm(rng);
    const auto p = build_povm(pp);
    const oracle::Vec8 out = oracle::on_qubit(index_of(pp.target), p.x1) * oracle::vec(s);
    const double prob = out.squaredNorm();
    ASSERT_NEAR(branch_probability(s, p.x1, pp.target), prob, 1e-12);
    if (prob < 1e-10) continue;
    const auto b = apply_povm_branch(s, p.x1, pp.target);
    ASSERT_LT((oracle::vec(b.state) - out / std::sqrt(prob)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PovmBranch, ProbabilitiesSumToOne) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10000; ++k) {
    const auto s = prepare_state(oracle::random_params(rng));
    const auto pp = random_povm(rng);
    const auto p = build_povm(pp);
    ASSERT_NEAR(branch_probability(s, p.x1, pp.target) + branch_probability(s, p.x2, pp.target), 1.0, 1e-12);
  }
}

TEST(Deficit, UnitarySplitIsZero) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int k = 0; k < 2000; ++k) {
    const auto s = prepare_state(oracle::random_params(rng));
    const double t = u(rng);
    const auto q = qubit_from_index(k % 3 + 1);
    // Same |sin| and |cos|: theta2 = theta1 or pi - theta1 (wrapped).
    double t2 = k % 2 ? t : std::remainder(pi - t, 2 * pi);
    ASSERT_NEAR(locc_fill_deficit(s, {t, t2, u(rng), u(rng), q}), 0.0, 1e-12);
  }
}

TEST(Deficit, ProjectiveMeasurementDestroysFill) {
  for (int q = 1; q <= 3; ++q) {
    const auto s = prepare_state(StateParams::make(2.5, 0.3, 0.5));
    const double d = locc_fill_deficit(s, {pi / 2, 0, 0, 0, qubit_from_index(q)});
    EXPECT_GE(d, 0.0);
    EXPECT_NEAR(d, concurrence_fill(s), 1e-12);
  }
}

TEST(Deficit, GhzUnderRandomMeasurements) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 2000; ++k) {
    EXPECT_GE(locc_fill_deficit(ThreeQubitPureState::ghz(), random_povm(rng)), -1e-9);
  }
}

TEST(MonteCarlo, NonnegativeAndReproducible) {
  const auto a = locc_monte_carlo(20000, 7, 1);
  EXPECT_EQ(a.samples, 20000U);
  EXPECT_GE(a.min_deficit, -kDeficitFlag);
  EXPECT_EQ(a.flagged, 0U);
  EXPECT_TRUE(a.passed());
  EXPECT_GT(a.mean_deficit, 0.0);

  const auto b = locc_monte_carlo(20000, 7, 3);
  EXPECT_EQ(a.min_deficit, b.min_deficit);
  EXPECT_EQ(a.mean_deficit, b.mean_deficit);
  EXPECT_EQ(a.argmin.index, b.argmin.index);

  const auto c = locc_monte_carlo(20000, 8, 1);
  EXPECT_NE(a.mean_deficit, c.mean_deficit);
}

TEST(MonteCarlo, SampleReplayMatchesSearch) {
  const auto s = locc_monte_carlo(5000, 11, 2);
  const auto replay = locc_sample(11, s.argmin.index);
  EXPECT_EQ(replay.deficit, s.argmin.deficit);
  EXPECT_EQ(replay.state.alpha_mag, s.argmin.state.alpha_mag);
  EXPECT_EQ(replay.povm.theta1, s.argmin.povm.theta1);
}

TEST(MonteCarlo, SamplesStayInRange) {
  for (std::uint64_t i = 0; i < 9000; i += 37) {
    const auto s = locc_sample(3, i);
    EXPECT_GE(s.state.alpha_mag, 0.0);
    EXPECT_LE(s.state.alpha_mag, 6.0);
    EXPECT_GE(s.state.phi, 0.0);
    EXPECT_LE(s.state.phi, pi);
    EXPECT_LE(s.state.transmissivity, 1.0);
    EXPECT_EQ(index_of(s.povm.target), static_cast<int>(i % 3) + 1);
    for (double a : {s.povm.theta1, s.povm.theta2, s.povm.kappa1, s.povm.kappa2}) {
      EXPECT_GE(a, -pi);
      EXPECT_LE(a, pi);
    }
  }
}

TEST(GridSearch, CoarseGridIsNonnegative) {
  const auto g = locc_grid_search(5, 1);
  EXPECT_EQ(g.samples, 625U * 8 * 3);
  EXPECT_GE(g.min_deficit, -kDeficitFlag);
  EXPECT_EQ(locc_grid_states().size(), 8U);
  EXPECT_THROW(locc_grid_search(1), InvalidArgument);
}
