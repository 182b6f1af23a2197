#include "glottal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "glottal/error.hpp"
#include "glottal/fft.hpp"

namespace glottal {

namespace {

void check_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) fail(ErrorKind::invalid_data, "non-finite sample in frame");
}

}  // namespace

double Cepstrum::operator()(long n) const {
  const long N = static_cast<long>(fft_size);
  if (n < -N / 2 || n >= N / 2) return 0.0;
  return coefficients[static_cast<std::size_t>(n < 0 ? n + N : n)];
}

Spectrum analyze(std::span<const double> samples, std::size_t fft_size, double sample_rate) {
  if (!is_power_of_two(fft_size))
    fail(ErrorKind::invalid_argument, "fft size must be a power of two");
  if (fft_size < samples.size())
    fail(ErrorKind::invalid_argument, "fft size smaller than frame length");
  check_finite(samples);
  Spectrum s;
  s.bins = fft::forward_real(samples, fft_size);
  s.fft_size = fft_size;
  s.sample_rate = sample_rate;
  return s;
}

Spectrum analyze(const SignalFrame& frame, std::size_t fft_size) {
  return analyze(frame.samples, fft_size, frame.sample_rate);
}

UnwrappedPhase unwrap_phase(const Spectrum& spec) {
  const std::size_t half = spec.fft_size / 2;
  UnwrappedPhase out;
  out.values.assign(half + 1, 0.0);
  // Increments are taken as arg(X_k * conj(X_{k-1})) which is the principal
  // difference of adjacent phases without an explicit 2*pi search.
  const double pi = std::numbers::pi;
  for (std::size_t k = 1; k <= half; ++k) {
    const double d = std::arg(spec.bins[k] * std::conj(spec.bins[k - 1]));
    if (std::abs(d) > pi - kPhaseAmbiguityMargin) out.low_confidence = true;
    out.values[k] = out.values[k - 1] + d;
  }
  out.phi_at_pi = out.values[half];
  const double r = out.phi_at_pi / pi;
  if (std::abs(r - std::round(r)) > 0.25) out.low_confidence = true;
  return out;
}

long round_half_away(double v) {
  return static_cast<long>(v < 0 ? -std::floor(-v + 0.5) : std::floor(v + 0.5));
}

Cepstrum complex_cepstrum(std::span<const double> samples, std::size_t fft_size) {
  check_finite(samples);
  if (std::all_of(samples.begin(), samples.end(), [](double v) { return v == 0.0; }))
    fail(ErrorKind::invalid_data, "all-zero frame has no cepstrum");

  Cepstrum cep;
  cep.fft_size = fft_size;
  // X(0) = sum(x); a negative DC value would put pi into the phase at omega=0
  std::vector<double> x(samples.begin(), samples.end());
  if (std::accumulate(x.begin(), x.end(), 0.0) < 0.0) {
    cep.gain_sign = -1;
    for (auto& v : x) v = -v;
  }

  const Spectrum spec = analyze(x, fft_size);
  const UnwrappedPhase ph = unwrap_phase(spec);
  cep.low_confidence = ph.low_confidence;
  cep.circular_delay = round_half_away(ph.phi_at_pi / std::numbers::pi);

  double peak = 0.0;
  for (const auto& b : spec.bins) peak = std::max(peak, std::abs(b));
  const double floor = kMagnitudeFloor * peak;

  const std::size_t N = fft_size, half = N / 2;
  std::vector<cplx> logx(N);
  for (std::size_t k = 0; k <= half; ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N);
    const double mag = std::max(std::abs(spec.bins[k]), floor);
    double phase = ph.values[k] - static_cast<double>(cep.circular_delay) * w;
    if (k == 0 || k == half) phase = 0.0;
    logx[k] = cplx(std::log(mag), phase);
  }
  for (std::size_t k = half + 1; k < N; ++k) logx[k] = std::conj(logx[N - k]);
  cep.coefficients = fft::inverse_real(logx);
  return cep;
}

Cepstrum complex_cepstrum(const SignalFrame& frame, std::size_t fft_size) {
  return complex_cepstrum(frame.samples, fft_size);
}

IndexedSignal inverse_complex_cepstrum(const Cepstrum& cep, CepstralSide keep) {
  const std::size_t N = cep.fft_size, half = N / 2;
  std::vector<cplx> c(N);
  for (std::size_t i = 0; i < N; ++i) {
    const bool negative = i >= half;
    const bool take = keep == CepstralSide::All ||
                      (keep == CepstralSide::Anticausal && negative) ||
                      (keep == CepstralSide::Causal && !negative);
    if (take) c[i] = cep.coefficients[i];
  }
  std::vector<cplx> spec(N);
  fft::forward(c, spec);
  for (auto& v : spec) v = std::exp(v);
  const std::vector<double> y = fft::inverse_real(spec);

  IndexedSignal out;
  out.start = -static_cast<long>(half);
  out.samples.resize(N);
  for (std::size_t i = 0; i < N; ++i) out.samples[i] = y[(i + half) % N];
  return out;
}

}  // namespace glottal
