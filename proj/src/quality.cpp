#include "glottal/quality.hpp"

#include <algorithm>
#include <cmath>

#include "glottal/error.hpp"
#include "glottal/fft.hpp"

namespace glottal {

double spectral_center_of_gravity(std::span<const double> samples, double sample_rate,
                                  CogWeighting weighting, std::size_t fft_size) {
  if (!(sample_rate > 0)) fail(ErrorKind::invalid_argument, "sample rate must be positive");
  double peak = 0.0;
  for (double v : samples) peak = std::max(peak, std::abs(v));
  if (!(peak > 0)) fail(ErrorKind::invalid_data, "zero-energy signal has no center of gravity");
  if (fft_size == 0) fft_size = default_fft_size(samples.size());

  // normalizing first makes the result independent of the input scale
  std::vector<double> x(samples.begin(), samples.end());
  for (auto& v : x) v /= peak;
  const auto X = fft::forward_real(x, fft_size);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k <= fft_size / 2; ++k) {
    const double m = std::abs(X[k]);
    const double w = weighting == CogWeighting::Magnitude ? m : m * m;
    num += w * static_cast<double>(k);
    den += w;
  }
  return num / den * sample_rate / static_cast<double>(fft_size);
}

std::vector<double> crop_around_peak(const IndexedSignal& s, std::size_t length) {
  long peak = s.first();
  double best = -1.0;
  for (long n = s.first(); n <= s.last(); ++n)
    if (std::abs(s.at(n)) > best) {
      best = std::abs(s.at(n));
      peak = n;
    }
  std::vector<double> out(length);
  const long lo = peak - static_cast<long>(length) / 2;
  for (std::size_t i = 0; i < length; ++i) out[i] = s.at(lo + static_cast<long>(i));
  return out;
}

double anticausal_cog(const IndexedSignal& anticausal, double t0, double sample_rate,
                      CogWeighting weighting) {
  const auto len = static_cast<std::size_t>(std::max(4L, std::lround(2.0 * t0 * sample_rate)));
  return spectral_center_of_gravity(crop_around_peak(anticausal, len), sample_rate, weighting);
}

QualityLabel classify_decomposition(double cog, double threshold) {
  if (!(threshold > 0)) fail(ErrorKind::invalid_argument, "threshold must be positive");
  return {cog, cog < threshold, threshold};
}

double correct_rate(std::span<const QualityLabel> labels) {
  if (labels.empty()) fail(ErrorKind::invalid_argument, "no labels to rate");
  const auto n = std::count_if(labels.begin(), labels.end(),
                               [](const QualityLabel& l) { return l.correct; });
  return static_cast<double>(n) / static_cast<double>(labels.size());
}

std::vector<HistogramBin> histogram(std::span<const double> values, double low, double high,
                                    std::size_t bins, bool normalize) {
  if (bins == 0 || !(high > low)) fail(ErrorKind::invalid_argument, "bad histogram range");
  std::vector<HistogramBin> out(bins);
  const double width = (high - low) / static_cast<double>(bins);
  for (std::size_t i = 0; i < bins; ++i) out[i].low = low + width * static_cast<double>(i);
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    long i = static_cast<long>(std::floor((v - low) / width));
    i = std::clamp(i, 0L, static_cast<long>(bins) - 1);
    out[static_cast<std::size_t>(i)].count += 1.0;
  }
  if (normalize && !values.empty()) {
    double total = 0.0;
    for (const auto& b : out) total += b.count;
    if (total > 0)
      for (auto& b : out) b.count /= total;
  }
  return out;
}

void write_cog_histogram(std::ostream& out, std::span<const HistogramBin> bins) {
  for (const auto& b : bins) out << b.low << '\t' << b.count << '\n';
}

}  // namespace glottal
