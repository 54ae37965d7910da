#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tristeer/qstate.hpp"

// Truncated Fock-space simulation of the two optical stages: the quantum
// scissors that turns a coherent state into a vacuum--one-photon
// superposition, and the two-beam-splitter tritter that spreads it over
// three modes.
namespace tristeer::fock {

inline constexpr int kDefaultScissorsCutoff = 20;
/// Largest truncation tail a coherent state may drop.
inline constexpr double kCoherentTailBound = 1e-12;

/// Amplitudes over photon-number tuples (n_0, ..., n_{m-1}), n_i <= cutoff,
/// stored row-major with mode 0 most significant. A zero-mode state holds a
/// single scalar amplitude (what is left after measuring the last mode).
class FockCircuitState {
 public:
  /// Vacuum on num_modes modes.
  FockCircuitState(int num_modes, int cutoff);

  static FockCircuitState from_amplitudes(int num_modes, int cutoff, std::vector<cplx> amplitudes);
  static FockCircuitState number_state(std::span<const int> occupations, int cutoff);

  int num_modes() const { return num_modes_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return amps_.size(); }

  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx amplitude(std::span<const int> occupations) const { return amps_[flat_index(occupations)]; }
  void set_amplitude(std::span<const int> occupations, cplx value) {
    amps_[flat_index(occupations)] = value;
  }

  std::size_t flat_index(std::span<const int> occupations) const;
  std::vector<int> occupations(std::size_t flat) const;
  /// Flat-index step for one extra photon in `mode`.
  std::size_t stride(int mode) const;

  double norm_squared() const;

 private:
  int num_modes_;
  int cutoff_;
  std::vector<cplx> amps_;
};

/// Modes of a are placed before the modes of b. Cutoffs must agree.
FockCircuitState tensor(const FockCircuitState& a, const FockCircuitState& b);

/// B(theta) acting on modes (a, b) with
///   B a^dag B^dag = cos(theta) a^dag - sin(theta) b^dag,
///   B b^dag B^dag = sin(theta) a^dag + cos(theta) b^dag.
struct BeamSplitterSpec {
  int mode_a = 0;
  int mode_b = 1;
  double theta = 0.0;

  /// theta with cos^2(theta) = transmissivity.
  static BeamSplitterSpec from_transmissivity(int mode_a, int mode_b, double transmissivity);
};

/// Poisson mass beyond n = cutoff for mean |alpha|^2.
double coherent_tail(double alpha_mag, int cutoff);
/// Smallest cutoff whose coherent tail is below kCoherentTailBound.
int minimal_cutoff(double alpha_mag);

/// Single-mode |alpha> truncated at `cutoff`; throws CutoffTooSmall when the
/// dropped tail is not below kCoherentTailBound.
FockCircuitState coherent_state(cplx alpha, int cutoff);

FockCircuitState apply_beam_splitter(const FockCircuitState& state, const BeamSplitterSpec& bs);

struct Projection {
  FockCircuitState state;  // measured mode removed
  double probability;
};

/// Projects `mode` onto `count` photons. The returned state is unnormalized
/// unless `renormalize` is set, in which case outcomes with probability
/// below 1e-300 raise ZeroProbability.
Projection project_photon_count(const FockCircuitState& state, int mode, int count,
                                bool renormalize = false);

/// Detector counts heralding a scissors run. The ancilla port is the BS2
/// output fed by the BS1 ancilla; the coherent port is the other one.
struct HeraldPattern {
  int ancilla_port = 0;
  int coherent_port = 1;

  /// Reproduces +alpha on |1>.
  static constexpr HeraldPattern canonical() { return {0, 1}; }
  /// Valid single-photon herald that flips the sign of the |1> amplitude.
  static constexpr HeraldPattern alternate() { return {1, 0}; }
};

struct ScissorsResult {
  VopsAmplitudes vops;        // global phase fixed so omega0 is real and >= 0
  double herald_probability;  // joint probability of the herald pattern
  double leakage;             // normalized weight outside span{|0>, |1>}
};

/// Single photon -> balanced BS1 -> one output mixed with |alpha> on
/// balanced BS2 -> herald. Throws HeraldPatternAmbiguous unless the pattern
/// is one of the two single-photon patterns.
ScissorsResult run_scissors(cplx alpha, int cutoff = kDefaultScissorsCutoff,
                            HeraldPattern pattern = HeraldPattern::canonical());

/// Injects (omega0|0> + omega1|1>)|0>|0>, applies B23(theta) B12(pi/4) with
/// cos^2(theta) = T and reads the <=1-photon-per-mode amplitudes as qubits.
ThreeQubitPureState run_tritter(const VopsAmplitudes& vops, double transmissivity);

}  // namespace tristeer::fock
