#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "glottal/decomposition.hpp"
#include "glottal/signal.hpp"

namespace glottal {

struct Plateau {
  std::size_t start_idx = 0;
  std::size_t end_idx = 0;  // inclusive
  long n_d = 0;

  std::size_t length() const { return end_idx - start_idx + 1; }
};

struct RadiusSearchResult {
  std::vector<double> radii;
  std::vector<long> n_d;
  std::vector<Plateau> plateaus;  // maximal runs, partitioning the grid
  std::size_t best_plateau = 0;
  double optimal_radius = 1.0;
  std::pair<double, double> bounds{1.0, 1.0};
  bool degenerate = false;  // no plateau of length >= 2
  bool low_confidence = false;
};

inline constexpr std::size_t kDefaultRadii = 60;

// x(n) R^{-n} with n = 0 at the first sample.
std::vector<double> chirp_modulate(std::span<const double> samples, double radius);
SignalFrame chirp_modulate(const SignalFrame& frame, double radius);

// round(phi(pi)/pi) of the sign-normalized modulated frame.
long circular_delay(std::span<const double> samples, double radius, std::size_t fft_size,
                    bool* low_confidence = nullptr);

// exp(-+50 pi / (17 L)).
std::pair<double, double> radius_bounds(std::size_t frame_length);

// Maximal runs of equal values.
std::vector<Plateau> find_plateaus(std::span<const long> n_d);

// Grid of n_radii points uniform in radius between the bounds.
RadiusSearchResult find_optimal_radius(std::span<const double> samples,
                                       std::size_t n_radii = kDefaultRadii,
                                       std::size_t fft_size = 0);

// Scan, pick the radius (R = 1 on a degenerate scan) and decompose there.
MixedPhaseDecomposition decompose_chirp(const SignalFrame& frame, std::size_t fft_size = 0,
                                        std::size_t n_radii = kDefaultRadii,
                                        RadiusSearchResult* search = nullptr);

}  // namespace glottal
