#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "glottal/quality.hpp"
#include "glottal/signal.hpp"

namespace glottal {

inline constexpr double kLeakCoefficient = 0.99;
inline constexpr double kHrfFloorDb = -60.0;
// peak search half-width around k*f0, as a fraction of f0
inline constexpr double kHarmonicSearchFraction = 0.2;

struct GlottalFeatures {
  long frame_id = 0;
  double f0 = 0.0;
  std::optional<double> naq;
  std::optional<double> h1h2;  // dB
  std::optional<double> hrf;   // dB
  QualityLabel quality;
};

// One period of the flow-derivative estimate: the anticausal samples on
// n in [-(period-1), 0], i.e. the open phase ending at the closure instant,
// with polarity chosen so the dominant peak is negative.
std::vector<double> align_glottal_period(const IndexedSignal& anticausal, std::size_t period);

// y[n] = d[n] + a*y[n-1], followed by mean removal.
std::vector<double> leaky_integrate(std::span<const double> derivative,
                                    double leak = kLeakCoefficient);

// NAQ = (max(flow) - min(flow)) / (|min(derivative)| * T0_samples).
double compute_naq(std::span<const double> derivative, double t0_samples);

// Tiles one period `repeats` times.
std::vector<double> periodize(std::span<const double> period, std::size_t repeats);

// Harmonic amplitudes (linear) for k = 1..count, Blackman-windowed and
// refined by parabolic interpolation on the dB magnitude. A harmonic whose
// search region holds no energy above -120 dB of the spectrum peak is nullopt.
std::vector<std::optional<double>> harmonic_amplitudes(std::span<const double> signal,
                                                       double f0, double sample_rate,
                                                       std::size_t count);

double compute_h1h2(std::span<const double> signal, double f0, double sample_rate);
double compute_hrf(std::span<const double> signal, double f0, double sample_rate);

// All three features from an anticausal estimate; each one independently
// left empty when it cannot be computed.
GlottalFeatures extract_features(const IndexedSignal& anticausal, double t0, double sample_rate);

struct FeatureRanges {
  double naq_low = 0.0, naq_high = 0.4;
  double h1h2_low = -5.0, h1h2_high = 25.0;
  double hrf_low = -40.0, hrf_high = 10.0;
  std::size_t bins = 20;
};

struct FeatureHistograms {
  std::vector<HistogramBin> naq, h1h2, hrf;
};

// Normalized histograms over frames labeled correct only.
FeatureHistograms feature_histograms(std::span<const GlottalFeatures> features,
                                     const FeatureRanges& ranges = {});

double histogram_l1(std::span<const HistogramBin> a, std::span<const HistogramBin> b);

}  // namespace glottal
