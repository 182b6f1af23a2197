#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "glottal/signal.hpp"

namespace glottal {

using cplx = std::complex<double>;

struct Spectrum {
  std::vector<cplx> bins;  // bin k <-> omega = 2*pi*k/fft_size
  std::size_t fft_size = 0;
  double sample_rate = 0.0;
};

struct UnwrappedPhase {
  std::vector<double> values;  // bins 0..fft_size/2
  bool linear_removed = false;
  double phi_at_pi = 0.0;
  bool low_confidence = false;
};

// Cepstral coefficients are stored in FFT order: index i holds quefrency i
// for i < N/2 and i - N otherwise. Use operator() for signed access.
struct Cepstrum {
  std::vector<double> coefficients;
  std::size_t fft_size = 0;
  long circular_delay = 0;  // n_d, integer linear-phase term that was removed
  int gain_sign = 1;        // -1 when the frame was negated before analysis
  bool low_confidence = false;

  double operator()(long n) const;
};

enum class CepstralSide {
  Anticausal,  // n < 0, zero at the origin
  Causal,      // n >= 0, carries the origin (gain)
  All,
};

// Adjacent-bin jumps above this magnitude are treated as ambiguous.
inline constexpr double kPhaseAmbiguityMargin = 0.1;
inline constexpr double kMagnitudeFloor = 1e-10;

Spectrum analyze(std::span<const double> samples, std::size_t fft_size,
                 double sample_rate = 0.0);
Spectrum analyze(const SignalFrame& frame, std::size_t fft_size);

UnwrappedPhase unwrap_phase(const Spectrum& spec);

long round_half_away(double v);

// Sign-normalized complex cepstrum with the integer linear phase removed.
Cepstrum complex_cepstrum(std::span<const double> samples, std::size_t fft_size);
Cepstrum complex_cepstrum(const SignalFrame& frame, std::size_t fft_size);

// exp-domain inverse of the selected cepstral half. The result spans the full
// transform period on n in [-N/2, N/2 - 1]; callers crop to the support they
// need. Sign and removed delay are not reapplied here.
IndexedSignal inverse_complex_cepstrum(const Cepstrum& cep, CepstralSide keep);

}  // namespace glottal
