#include "glottal/decomposition.hpp"

#include <cmath>

#include "glottal/error.hpp"

namespace glottal {

MixedPhaseDecomposition decompose_at_radius(std::span<const double> samples, double radius,
                                            std::size_t fft_size, double sample_rate) {
  if (!(radius > 0)) fail(ErrorKind::invalid_argument, "radius must be positive");
  const std::size_t L = samples.size();
  if (L < 1 || fft_size < L) fail(ErrorKind::invalid_argument, "fft size smaller than frame");

  std::vector<double> xm(samples.begin(), samples.end());
  if (radius != 1.0)
    for (std::size_t n = 0; n < L; ++n) xm[n] *= std::pow(radius, -static_cast<double>(n));

  MixedPhaseDecomposition d;
  d.cepstrum = complex_cepstrum(xm, fft_size);
  d.radius_used = radius;
  d.removed_delay = -d.cepstrum.circular_delay;
  d.gain_sign = d.cepstrum.gain_sign;
  d.fft_size = fft_size;
  d.frame_length = L;
  d.sample_rate = sample_rate;
  d.flags.low_confidence = d.cepstrum.low_confidence;

  const IndexedSignal a = inverse_complex_cepstrum(d.cepstrum, CepstralSide::Anticausal);
  const IndexedSignal c = inverse_complex_cepstrum(d.cepstrum, CepstralSide::Causal);

  // A degree L-1 polynomial has at most L-1 zeros on either side, so both
  // supports fit in L samples; anything beyond is aliasing residue.
  const long span = static_cast<long>(L);
  d.anticausal.start = -(span - 1);
  d.anticausal.sample_rate = sample_rate;
  d.anticausal.samples.resize(L);
  d.causal.start = 0;
  d.causal.sample_rate = sample_rate;
  d.causal.samples.resize(L);
  // x(n) = s R^n (a'*c')(n - m) = s ((a'R^k) * (c'R^k R^m))(n - m): the
  // modulation distributes over the convolution, the leftover R^m is gain.
  const double gain = std::pow(radius, static_cast<double>(d.removed_delay));
  for (long n = -(span - 1); n <= 0; ++n)
    d.anticausal.samples[n + span - 1] = a.at(n) * std::pow(radius, static_cast<double>(n));
  for (long n = 0; n < span; ++n)
    d.causal.samples[n] = gain * c.at(n) * std::pow(radius, static_cast<double>(n));
  return d;
}

MixedPhaseDecomposition decompose_traditional(const SignalFrame& frame, std::size_t fft_size) {
  return decompose_at_radius(frame.samples, 1.0, fft_size, frame.sample_rate);
}

MixedPhaseDecomposition decompose_traditional(const SignalFrame& frame) {
  return decompose_traditional(frame, default_fft_size(frame.size()));
}

SignalFrame reconstruct(const MixedPhaseDecomposition& d) {
  // fft_size is zero for root-split decompositions, which have no transform
  if (d.frame_length == 0 || (d.fft_size != 0 && d.fft_size < d.frame_length))
    fail(ErrorKind::invalid_argument, "decomposition has an inconsistent fft size");
  const IndexedSignal y = convolve(d.anticausal, d.causal);
  SignalFrame f;
  f.sample_rate = d.sample_rate;
  f.samples.resize(d.frame_length);
  for (std::size_t n = 0; n < d.frame_length; ++n)
    f.samples[n] = d.gain_sign * y.at(static_cast<long>(n) - d.removed_delay);
  return f;
}

}  // namespace glottal
