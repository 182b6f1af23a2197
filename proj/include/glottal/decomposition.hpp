#pragma once

#include <cstddef>
#include <span>

#include "glottal/signal.hpp"
#include "glottal/spectral.hpp"

namespace glottal {

struct DecompositionFlags {
  bool low_confidence = false;    // phase unwrapping was ambiguous somewhere
  bool degenerate_search = false; // radius scan found no plateau, fell back to R = 1
};

// x(n) = gain_sign * (anticausal * causal)(n - removed_delay), n = 0..L-1.
// The anticausal part lives on n in [-(L-1), 0] with a(0) carrying no gain;
// the causal part lives on [0, L-1] and carries the overall gain.
struct MixedPhaseDecomposition {
  IndexedSignal anticausal;
  IndexedSignal causal;
  Cepstrum cepstrum;  // of the (modulated) frame
  double radius_used = 1.0;
  long removed_delay = 0;  // -n_d
  int gain_sign = 1;
  std::size_t fft_size = 0;
  std::size_t frame_length = 0;
  double sample_rate = 0.0;
  DecompositionFlags flags;

  long circular_delay() const { return -removed_delay; }
};

// Complex cepstrum decomposition of x(n) R^{-n}, components de-modulated back
// so they refer to the original frame.
MixedPhaseDecomposition decompose_at_radius(std::span<const double> samples, double radius,
                                            std::size_t fft_size, double sample_rate = 0.0);

MixedPhaseDecomposition decompose_traditional(const SignalFrame& frame, std::size_t fft_size);
MixedPhaseDecomposition decompose_traditional(const SignalFrame& frame);

// Convolves the components back and restores delay and sign: the first
// frame_length samples of the original frame.
SignalFrame reconstruct(const MixedPhaseDecomposition& d);

}  // namespace glottal
