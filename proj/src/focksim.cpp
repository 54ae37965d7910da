#include "tristeer/focksim.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "tristeer/errors.hpp"

namespace tristeer::fock {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_mode(const FockCircuitState& s, int mode) {
  if (mode < 0 || mode >= s.num_modes()) {
    throw InvalidArgument("mode " + std::to_string(mode) + " out of range for a " +
                          std::to_string(s.num_modes()) + "-mode state");
  }
}

// Generator a^dag b - a b^dag restricted to the (a + b = total) block of the
// truncated two-mode space. Basis element j has k = k_min + j photons in a.
Eigen::MatrixXd block_generator(int total, int k_min, int k_max) {
  const int dim = k_max - k_min + 1;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const int k = k_min + j;
    if (k + 1 <= k_max) g(j + 1, j) += std::sqrt(double(k + 1) * double(total - k));
    if (k - 1 >= k_min) g(j - 1, j) -= std::sqrt(double(k) * double(total - k + 1));
  }
  return g;
}

}  // namespace

FockCircuitState::FockCircuitState(int num_modes, int cutoff)
    : num_modes_(num_modes), cutoff_(cutoff) {
  if (num_modes < 0) throw InvalidArgument("number of modes must be nonnegative");
  if (cutoff < 1) throw InvalidArgument("photon cutoff must be at least 1");
  amps_.assign(ipow(static_cast<std::size_t>(cutoff) + 1, num_modes), cplx(0.0));
  amps_[0] = 1.0;
}

FockCircuitState FockCircuitState::from_amplitudes(int num_modes, int cutoff,
                                                   std::vector<cplx> amplitudes) {
  FockCircuitState s(num_modes, cutoff);
  if (amplitudes.size() != s.amps_.size()) {
    throw InvalidArgument("amplitude count does not match (cutoff + 1)^modes");
  }
  s.amps_ = std::move(amplitudes);
  if (s.norm_squared() > 1.0 + 1e-12) throw InvalidArgument("Fock amplitudes exceed unit norm");
  return s;
}

FockCircuitState FockCircuitState::number_state(std::span<const int> occupations, int cutoff) {
  FockCircuitState s(static_cast<int>(occupations.size()), cutoff);
  s.amps_[0] = 0.0;
  s.amps_[s.flat_index(occupations)] = 1.0;
  return s;
}

std::size_t FockCircuitState::stride(int mode) const {
  return ipow(static_cast<std::size_t>(cutoff_) + 1, num_modes_ - 1 - mode);
}

std::size_t FockCircuitState::flat_index(std::span<const int> occ) const {
  if (static_cast<int>(occ.size()) != num_modes_) throw InvalidArgument("occupation tuple has wrong length");
  std::size_t idx = 0;
  for (int n : occ) {
    if (n < 0 || n > cutoff_) throw InvalidArgument("occupation exceeds photon cutoff");
    idx = idx * (static_cast<std::size_t>(cutoff_) + 1) + static_cast<std::size_t>(n);
  }
  return idx;
}

std::vector<int> FockCircuitState::occupations(std::size_t flat) const {
  std::vector<int> occ(static_cast<std::size_t>(num_modes_));
  const auto base = static_cast<std::size_t>(cutoff_) + 1;
  for (int m = num_modes_ - 1; m >= 0; --m) {
    occ[static_cast<std::size_t>(m)] = static_cast<int>(flat % base);
    flat /= base;
  }
  return occ;
}

double FockCircuitState::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

FockCircuitState tensor(const FockCircuitState& a, const FockCircuitState& b) {
  if (a.cutoff() != b.cutoff()) throw InvalidArgument("tensor product needs matching cutoffs");
  std::vector<cplx> amps(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) amps[i * b.size() + j] = a.amplitudes()[i] * b.amplitudes()[j];
  }
  return FockCircuitState::from_amplitudes(a.num_modes() + b.num_modes(), a.cutoff(), std::move(amps));
}

BeamSplitterSpec BeamSplitterSpec::from_transmissivity(int mode_a, int mode_b, double transmissivity) {
  if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
    throw InvalidArgument("transmissivity must lie in [0, 1]");
  }
  return {mode_a, mode_b, std::acos(std::sqrt(transmissivity))};
}

double coherent_tail(double alpha_mag, int cutoff) {
  const double mean = alpha_mag * alpha_mag;
  if (mean == 0.0) return 0.0;
  const double log_mean = std::log(mean);
  double tail = 0.0;
  for (int n = cutoff + 1;; ++n) {
    const double term = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
    tail += term;
    if (n > mean && term <= 1e-18 * tail) break;
    if (n > cutoff + 100000) break;
  }
  return tail;
}

int minimal_cutoff(double alpha_mag) {
  int n = 1;
  while (coherent_tail(alpha_mag, n) >= kCoherentTailBound) ++n;
  return n;
}

FockCircuitState coherent_state(cplx alpha, int cutoff) {
  if (cutoff < 1) throw InvalidArgument("photon cutoff must be at least 1");
  const double tail = coherent_tail(std::abs(alpha), cutoff);
  if (tail >= kCoherentTailBound) {
    throw CutoffTooSmall("coherent state |alpha|=" + std::to_string(std::abs(alpha)) +
                         " loses " + std::to_string(tail) + " of its weight beyond n=" +
                         std::to_string(cutoff) + "; need cutoff >= " +
                         std::to_string(minimal_cutoff(std::abs(alpha))));
  }
  std::vector<cplx> amps(static_cast<std::size_t>(cutoff) + 1);
  amps[0] = std::exp(-std::norm(alpha) / 2.0);
  for (int n = 1; n <= cutoff; ++n) amps[n] = amps[n - 1] * alpha / std::sqrt(double(n));
  return FockCircuitState::from_amplitudes(1, cutoff, std::move(amps));
}

FockCircuitState apply_beam_splitter(const FockCircuitState& state, const BeamSplitterSpec& bs) {
  check_mode(state, bs.mode_a);
  check_mode(state, bs.mode_b);
  if (bs.mode_a == bs.mode_b) throw InvalidArgument("beam splitter needs two distinct modes");
  if (!std::isfinite(bs.theta)) throw InvalidArgument("beam-splitter angle must be finite");

  const int cutoff = state.cutoff();
  const auto base = static_cast<std::size_t>(cutoff) + 1;
  const std::size_t sa = state.stride(bs.mode_a);
  const std::size_t sb = state.stride(bs.mode_b);

  // The generator conserves n_a + n_b, so exp(theta G) is block diagonal in
  // the total; blocks are exponentiated on demand.
  std::vector<std::optional<Eigen::MatrixXcd>> blocks(static_cast<std::size_t>(2 * cutoff) + 1);
  auto block = [&](int total, int k_min, int k_max) -> const Eigen::MatrixXcd& {
    auto& slot = blocks[static_cast<std::size_t>(total)];
    if (!slot) {
      const Eigen::MatrixXd g = bs.theta * block_generator(total, k_min, k_max);
      slot = Eigen::MatrixXd(g.exp()).cast<cplx>();
    }
    return *slot;
  };

  std::vector<cplx> out(state.size(), cplx(0.0));
  const auto& in = state.amplitudes();
  Eigen::VectorXcd x;
  for (std::size_t f = 0; f < in.size(); ++f) {
    if ((f / sa) % base != 0 || (f / sb) % base != 0) continue;
    for (int total = 0; total <= 2 * cutoff; ++total) {
      const int k_min = std::max(0, total - cutoff);
      const int k_max = std::min(total, cutoff);
      const int dim = k_max - k_min + 1;
      x.resize(dim);
      bool any = false;
      for (int j = 0; j < dim; ++j) {
        const int k = k_min + j;
        x(j) = in[f + static_cast<std::size_t>(k) * sa + static_cast<std::size_t>(total - k) * sb];
        any = any || x(j) != cplx(0.0);
      }
      if (!any) continue;
      const Eigen::VectorXcd y = block(total, k_min, k_max) * x;
      for (int j = 0; j < dim; ++j) {
        const int k = k_min + j;
        out[f + static_cast<std::size_t>(k) * sa + static_cast<std::size_t>(total - k) * sb] = y(j);
      }
    }
  }
  return FockCircuitState::from_amplitudes(state.num_modes(), cutoff, std::move(out));
}

Projection project_photon_count(const FockCircuitState& state, int mode, int count, bool renormalize) {
  check_mode(state, mode);
  if (count < 0 || count > state.cutoff()) throw InvalidArgument("photon count outside [0, cutoff]");

  const auto base = static_cast<std::size_t>(state.cutoff()) + 1;
  const std::size_t s = state.stride(mode);
  std::vector<cplx> out(state.size() / base);
  for (std::size_t f = 0; f < state.size(); ++f) {
    if ((f / s) % base != static_cast<std::size_t>(count)) continue;
    out[(f / (s * base)) * s + f % s] = state.amplitudes()[f];
  }
  double p = 0.0;
  for (const auto& a : out) p += std::norm(a);
  if (renormalize) {
    if (p < 1e-300) throw ZeroProbability("projection outcome has zero probability");
    const double inv = 1.0 / std::sqrt(p);
    for (auto& a : out) a *= inv;
  }
  return {FockCircuitState::from_amplitudes(state.num_modes() - 1, state.cutoff(), std::move(out)), p};
}

ScissorsResult run_scissors(cplx alpha, int cutoff, HeraldPattern pattern) {
  const bool single_photon = (pattern.ancilla_port == 1 && pattern.coherent_port == 0) ||
                             (pattern.ancilla_port == 0 && pattern.coherent_port == 1);
  if (!single_photon) {
    throw HeraldPatternAmbiguous("herald pattern must detect exactly one photon: got (" +
                                 std::to_string(pattern.ancilla_port) + ", " +
                                 std::to_string(pattern.coherent_port) + ")");
  }

  // modes: 0 output, 1 ancilla, 2 coherent input
  const int photon[] = {1, 0};
  FockCircuitState s = tensor(FockCircuitState::number_state(photon, cutoff), coherent_state(alpha, cutoff));
  s = apply_beam_splitter(s, {0, 1, std::numbers::pi / 4.0});
  s = apply_beam_splitter(s, {1, 2, std::numbers::pi / 4.0});
  Projection coherent = project_photon_count(s, 2, pattern.coherent_port);
  Projection herald = project_photon_count(coherent.state, 1, pattern.ancilla_port);

  const double p = herald.probability;
  if (p < 1e-300) throw ZeroProbability("scissors herald has zero probability");
  const auto& out = herald.state.amplitudes();
  double leak = 0.0;
  for (std::size_t n = 2; n < out.size(); ++n) leak += std::norm(out[n]);
  leak /= p;
  if (leak >= 1e-12) throw Error("scissors output leaks outside span{|0>,|1>}");

  const double inv = 1.0 / std::sqrt(std::norm(out[0]) + std::norm(out[1]));
  cplx w0 = out[0] * inv;
  cplx w1 = out[1] * inv;
  if (std::abs(w0) > 0.0) {
    const cplx phase = std::conj(w0) / std::abs(w0);
    w0 *= phase;
    w1 *= phase;
  } else if (std::abs(w1) > 0.0) {
    w1 = std::abs(w1);
  }
  return {{cplx(w0.real(), 0.0), w1}, p, leak};
}

ThreeQubitPureState run_tritter(const VopsAmplitudes& vops, double transmissivity) {
  FockCircuitState s(3, 1);
  const int vac[] = {0, 0, 0};
  const int one[] = {1, 0, 0};
  s.set_amplitude(vac, vops.omega0);
  s.set_amplitude(one, vops.omega1);
  s = apply_beam_splitter(s, {0, 1, std::numbers::pi / 4.0});
  s = apply_beam_splitter(s, BeamSplitterSpec::from_transmissivity(1, 2, transmissivity));

  // With cutoff 1 the three-mode flat index n0*4 + n1*2 + n2 is the qubit index.
  ThreeQubitPureState::Amplitudes amps{};
  std::copy(s.amplitudes().begin(), s.amplitudes().end(), amps.begin());
  return ThreeQubitPureState::from_amplitudes(amps);
}

}  // namespace tristeer::fock
