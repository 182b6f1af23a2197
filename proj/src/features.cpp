#include "glottal/features.hpp"

#include <algorithm>
#include <cmath>

#include "glottal/error.hpp"
#include "glottal/fft.hpp"
#include "glottal/framing.hpp"

namespace glottal {

std::vector<double> align_glottal_period(const IndexedSignal& anticausal, std::size_t period) {
  if (period < 2) fail(ErrorKind::invalid_argument, "period too short");
  std::vector<double> g(period);
  const long P = static_cast<long>(period);
  for (long i = 0; i < P; ++i) g[static_cast<std::size_t>(i)] = anticausal.at(i - (P - 1));
  const auto [mn, mx] = std::minmax_element(g.begin(), g.end());
  if (std::abs(*mx) > std::abs(*mn))
    for (auto& v : g) v = -v;
  return g;
}

std::vector<double> leaky_integrate(std::span<const double> derivative, double leak) {
  std::vector<double> y(derivative.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < derivative.size(); ++n) {
    acc = derivative[n] + leak * acc;
    y[n] = acc;
  }
  if (!y.empty()) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    for (auto& v : y) v -= mean;
  }
  return y;
}

double compute_naq(std::span<const double> derivative, double t0_samples) {
  if (!(t0_samples > 0)) fail(ErrorKind::invalid_argument, "T0 must be positive");
  if (derivative.empty()) fail(ErrorKind::feature_unavailable, "empty glottal estimate");
  const double dmin = *std::min_element(derivative.begin(), derivative.end());
  if (!(dmin < 0)) fail(ErrorKind::feature_unavailable, "no negative derivative peak");
  const auto flow = leaky_integrate(derivative);
  const auto [lo, hi] = std::minmax_element(flow.begin(), flow.end());
  return (*hi - *lo) / (std::abs(dmin) * t0_samples);
}

std::vector<double> periodize(std::span<const double> period, std::size_t repeats) {
  std::vector<double> out;
  out.reserve(period.size() * repeats);
  for (std::size_t r = 0; r < repeats; ++r) out.insert(out.end(), period.begin(), period.end());
  return out;
}

std::vector<std::optional<double>> harmonic_amplitudes(std::span<const double> signal,
                                                       double f0, double sample_rate,
                                                       std::size_t count) {
  if (!(f0 > 0) || !(sample_rate > 0)) fail(ErrorKind::invalid_argument, "f0 and fs must be positive");
  if (signal.size() < 5) fail(ErrorKind::feature_unavailable, "signal too short for harmonics");
  const auto w = make_window(WindowShape::Blackman, signal.size());
  std::vector<double> x(signal.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = signal[i] * w[i];
  const std::size_t N = std::max<std::size_t>(8192, next_power_of_two(4 * x.size()));
  const auto X = fft::forward_real(x, N);
  const std::size_t half = N / 2;
  std::vector<double> mag(half + 1);
  for (std::size_t k = 0; k <= half; ++k) mag[k] = std::abs(X[k]);
  const double top = *std::max_element(mag.begin(), mag.end());
  if (!(top > 0)) fail(ErrorKind::feature_unavailable, "silent glottal estimate");

  const double bin_hz = sample_rate / static_cast<double>(N);
  std::vector<std::optional<double>> out(count);
  for (std::size_t h = 1; h <= count; ++h) {
    const double target = static_cast<double>(h) * f0;
    if (target >= sample_rate / 2) break;
    // the search half-width is a fraction of the harmonic spacing, so it
    // never reaches a neighbouring harmonic
    const double reach = kHarmonicSearchFraction * f0;
    const auto lo = static_cast<std::size_t>(std::max(1.0, std::ceil((target - reach) / bin_hz)));
    const auto hi = std::min<std::size_t>(
        half - 1, static_cast<std::size_t>(std::floor((target + reach) / bin_hz)));
    if (lo > hi) continue;
    std::size_t k = lo;
    for (std::size_t i = lo; i <= hi; ++i)
      if (mag[i] > mag[k]) k = i;
    if (!(mag[k] > 1e-6 * top)) continue;
    const double a = 20 * std::log10(std::max(mag[k - 1], 1e-300));
    const double b = 20 * std::log10(mag[k]);
    const double c = 20 * std::log10(std::max(mag[k + 1], 1e-300));
    const double den = a - 2 * b + c;
    double peak_db = b;
    if (den < 0) {
      const double p = std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
      peak_db = b - 0.25 * (a - c) * p;
    }
    out[h - 1] = std::pow(10.0, peak_db / 20.0);
  }
  return out;
}

double compute_h1h2(std::span<const double> signal, double f0, double sample_rate) {
  const auto amp = harmonic_amplitudes(signal, f0, sample_rate, 2);
  if (!amp[0] || !amp[1]) fail(ErrorKind::feature_unavailable, "first two harmonics not found");
  return 20.0 * std::log10(*amp[0] / *amp[1]);
}

double compute_hrf(std::span<const double> signal, double f0, double sample_rate) {
  const auto count = static_cast<std::size_t>(std::ceil(sample_rate / 2 / f0));
  if (count < 3) fail(ErrorKind::feature_unavailable, "fewer than 3 harmonics below Nyquist");
  const auto amp = harmonic_amplitudes(signal, f0, sample_rate, count);
  if (!amp[0]) fail(ErrorKind::feature_unavailable, "fundamental not found");
  double upper = 0.0;
  for (std::size_t h = 1; h < amp.size(); ++h)
    if (amp[h]) upper += *amp[h];
  if (!(upper > 0)) return kHrfFloorDb;
  return std::max(kHrfFloorDb, 20.0 * std::log10(upper / *amp[0]));
}

GlottalFeatures extract_features(const IndexedSignal& anticausal, double t0, double sample_rate) {
  GlottalFeatures f;
  const auto P = static_cast<std::size_t>(std::lround(t0 * sample_rate));
  f.f0 = sample_rate / static_cast<double>(P);
  const auto g = align_glottal_period(anticausal, P);
  try {
    f.naq = compute_naq(g, static_cast<double>(P));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::feature_unavailable) throw;
  }
  // an integer period makes the harmonics land exactly on k*f0
  const auto train = periodize(g, 8);
  try {
    f.h1h2 = compute_h1h2(train, f.f0, sample_rate);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::feature_unavailable) throw;
  }
  try {
    f.hrf = compute_hrf(train, f.f0, sample_rate);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::feature_unavailable) throw;
  }
  return f;
}

FeatureHistograms feature_histograms(std::span<const GlottalFeatures> features,
                                     const FeatureRanges& r) {
  std::vector<double> naq, h1h2, hrf;
  for (const auto& f : features) {
    if (!f.quality.correct) continue;
    if (f.naq) naq.push_back(*f.naq);
    if (f.h1h2) h1h2.push_back(*f.h1h2);
    if (f.hrf) hrf.push_back(*f.hrf);
  }
  if (naq.empty() && h1h2.empty() && hrf.empty())
    fail(ErrorKind::empty_output, "no correctly decomposed frames with features");
  FeatureHistograms h;
  h.naq = histogram(naq, r.naq_low, r.naq_high, r.bins, true);
  h.h1h2 = histogram(h1h2, r.h1h2_low, r.h1h2_high, r.bins, true);
  h.hrf = histogram(hrf, r.hrf_low, r.hrf_high, r.bins, true);
  return h;
}

double histogram_l1(std::span<const HistogramBin> a, std::span<const HistogramBin> b) {
  if (a.size() != b.size()) fail(ErrorKind::invalid_argument, "histograms differ in size");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i].count - b[i].count);
  return d;
}

}  // namespace glottal
