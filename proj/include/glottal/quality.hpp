#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "glottal/signal.hpp"

namespace glottal {

inline constexpr double kDefaultCogThreshold = 2700.0;

enum class CogWeighting { Magnitude, Power };

struct QualityLabel {
  double cog = 0.0;
  bool correct = false;
  double threshold = kDefaultCogThreshold;
};

// First spectral moment over [0, fs/2] on a zero-padded DFT.
double spectral_center_of_gravity(std::span<const double> samples, double sample_rate,
                                  CogWeighting weighting = CogWeighting::Magnitude,
                                  std::size_t fft_size = 0);

// `length` samples of the signal centered on its largest-magnitude sample.
std::vector<double> crop_around_peak(const IndexedSignal& s, std::size_t length);

// COG of the anticausal component restricted to two periods around its peak.
double anticausal_cog(const IndexedSignal& anticausal, double t0, double sample_rate,
                      CogWeighting weighting = CogWeighting::Magnitude);

QualityLabel classify_decomposition(double cog, double threshold = kDefaultCogThreshold);

double correct_rate(std::span<const QualityLabel> labels);

struct HistogramBin {
  double low = 0.0;
  double count = 0.0;  // raw count or normalized mass
};

// Fixed-width bins starting at `low`; values outside [low, high) are clamped
// into the edge bins.
std::vector<HistogramBin> histogram(std::span<const double> values, double low, double high,
                                    std::size_t bins, bool normalize);

// "bin_low_hz<TAB>count" rows.
void write_cog_histogram(std::ostream& out, std::span<const HistogramBin> bins);

}  // namespace glottal
