#include "tristeer/locc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "tristeer/errors.hpp"
#include "tristeer/parallel.hpp"

namespace tristeer {

namespace {

constexpr std::uint64_t kBlockSize = 4096;
constexpr int kDrawsPerSample = 7;
constexpr double kPi = std::numbers::pi;

std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

// Uniform on [0, 1) from the top 53 bits, identical on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

LoccSample draw(std::mt19937_64& rng, std::uint64_t index) {
  LoccSample s;
  s.index = index;
  const double a = 6.0 * unit(rng);
  const double phi = kPi * unit(rng);
  const double t = unit(rng);
  s.state = StateParams::make(a, phi, t);
  for (double* angle : {&s.povm.theta1, &s.povm.theta2, &s.povm.kappa1, &s.povm.kappa2}) {
    *angle = std::clamp(-kPi + 2.0 * kPi * unit(rng), -kPi, kPi);
  }
  s.povm.target = qubit_from_index(static_cast<int>(index % 3) + 1);
  return s;
}

struct Partial {
  std::uint64_t count = 0;
  double sum = 0.0;
  std::uint64_t flagged = 0;
  LoccSample best{0, {}, {}, std::numeric_limits<double>::infinity()};

  void add(const LoccSample& s) {
    ++count;
    sum += s.deficit;
    if (s.deficit < -kDeficitFlag) ++flagged;
    if (s.deficit < best.deficit) best = s;
  }

  void merge(const Partial& o) {
    count += o.count;
    sum += o.sum;
    flagged += o.flagged;
    if (o.best.deficit < best.deficit) best = o.best;
  }

  LoccSummary summary() const {
    LoccSummary out;
    out.samples = count;
    if (count == 0) return out;
    out.min_deficit = best.deficit;
    out.mean_deficit = sum / static_cast<double>(count);
    out.argmin = best;
    out.flagged = flagged;
    return out;
  }
};

void evaluate(LoccSample& s) { s.deficit = locc_fill_deficit(prepare_state(s.state), s.povm); }

}  // namespace

void validate(const PovmParams& p) {
  for (double angle : {p.theta1, p.theta2, p.kappa1, p.kappa2}) {
    if (!std::isfinite(angle) || angle < -kPi || angle > kPi) {
      throw InvalidArgument("POVM angle " + std::to_string(angle) + " outside [-pi, pi]");
    }
  }
  qubit_from_index(index_of(p.target));
}

Povm build_povm(const PovmParams& p) {
  validate(p);
  const cplx phase = std::polar(1.0, p.kappa2);
  Matrix2c v;
  v << std::cos(p.kappa1), -phase * std::sin(p.kappa1), std::sin(p.kappa1), phase * std::cos(p.kappa1);
  Matrix2c d1 = Matrix2c::Zero();
  Matrix2c d2 = Matrix2c::Zero();
  d1(0, 0) = std::sin(p.theta1);
  d1(1, 1) = std::sin(p.theta2);
  d2(0, 0) = std::cos(p.theta1);
  d2(1, 1) = std::cos(p.theta2);
  Povm out{d1 * v, d2 * v};
  const double residual =
      (out.x1.adjoint() * out.x1 + out.x2.adjoint() * out.x2 - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  if (residual > kCompletenessTolerance) {
    throw Error("POVM completeness residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return out;
}

namespace {

ThreeQubitPureState::Amplitudes act_on(const ThreeQubitPureState& state, const Matrix2c& x, Qubit target) {
  const int shift = 3 - index_of(target);
  const std::size_t mask = std::size_t{1} << shift;
  ThreeQubitPureState::Amplitudes out{};
  for (std::size_t i = 0; i < ThreeQubitPureState::kDim; ++i) {
    const int row = static_cast<int>((i >> shift) & 1U);
    const std::size_t base = i & ~mask;
    out[i] = x(row, 0) * state[base] + x(row, 1) * state[base | mask];
  }
  return out;
}

double squared_norm(const ThreeQubitPureState::Amplitudes& a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return s;
}

}  // namespace

double branch_probability(const ThreeQubitPureState& state, const Matrix2c& x, Qubit target) {
  return squared_norm(act_on(state, x, target));
}

Branch apply_povm_branch(const ThreeQubitPureState& state, const Matrix2c& x, Qubit target) {
  auto amps = act_on(state, x, target);
  const double p = squared_norm(amps);
  if (p < kBranchCutoff) {
    throw ZeroProbability("measurement branch probability " + std::to_string(p) + " is below 1e-14");
  }
  return {ThreeQubitPureState::normalized(amps), p};
}

double locc_fill_deficit(const ThreeQubitPureState& state, const PovmParams& p) {
  const Povm povm = build_povm(p);
  double average = 0.0;
  for (const Matrix2c* x : {&povm.x1, &povm.x2}) {
    if (branch_probability(state, *x, p.target) < kBranchCutoff) continue;
    const Branch b = apply_povm_branch(state, *x, p.target);
    average += b.probability * concurrence_fill(b.state);
  }
  return concurrence_fill(state) - average;
}

LoccSample locc_sample(std::uint64_t seed, std::uint64_t index) {
  auto rng = block_engine(seed, index / kBlockSize);
  rng.discard(kDrawsPerSample * (index % kBlockSize));
  LoccSample s = draw(rng, index);
  evaluate(s);
  return s;
}

LoccSummary locc_monte_carlo(std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<Partial> parts(blocks);
  parallel_for(blocks, workers, [&](std::size_t b) {
    auto rng = block_engine(seed, b);
    const std::uint64_t first = b * kBlockSize;
    const std::uint64_t last = std::min(samples, first + kBlockSize);
    for (std::uint64_t i = first; i < last; ++i) {
      LoccSample s = draw(rng, i);
      evaluate(s);
      parts[b].add(s);
    }
  });
  Partial total;
  for (const auto& p : parts) total.merge(p);
  return total.summary();
}

std::vector<StateParams> locc_grid_states() {
  return {
      StateParams::make(0.2, 0.1 * kPi, 0.3), StateParams::make(0.5, 0.0, 0.5),
      StateParams::make(1.0, 0.25 * kPi, 0.1), StateParams::make(1.5, 0.1 * kPi, 0.3),
      StateParams::make(2.5, 0.5 * kPi, 0.7), StateParams::make(3.5, 0.1 * kPi, 0.5),
      StateParams::make(5.5, 0.0, 0.3), StateParams::make(6.0, 0.9 * kPi, 0.9),
  };
}

LoccSummary locc_grid_search(int points_per_angle, unsigned workers) {
  if (points_per_angle < 2) throw InvalidArgument("grid needs at least two points per angle");
  const auto states = locc_grid_states();
  std::vector<double> angles(static_cast<std::size_t>(points_per_angle));
  for (int k = 0; k < points_per_angle; ++k) {
    angles[k] = k + 1 == points_per_angle ? kPi : -kPi + 2.0 * kPi * k / (points_per_angle - 1);
  }
  const std::size_t n = angles.size();
  const std::size_t per_task = n * n * n * n;
  std::vector<Partial> parts(states.size() * 3);
  parallel_for(parts.size(), workers, [&](std::size_t task) {
    const StateParams& sp = states[task / 3];
    const ThreeQubitPureState psi = prepare_state(sp);
    const Qubit target = qubit_from_index(static_cast<int>(task % 3) + 1);
    for (std::size_t j = 0; j < per_task; ++j) {
      LoccSample s;
      s.index = task * per_task + j;
      s.state = sp;
      s.povm = {angles[j % n], angles[(j / n) % n], angles[(j / (n * n)) % n], angles[j / (n * n * n)], target};
      s.deficit = locc_fill_deficit(psi, s.povm);
      parts[task].add(s);
    }
  });
  Partial total;
  for (const auto& p : parts) total.merge(p);
  return total.summary();
}

}  // namespace tristeer
