#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace glottal {

// A windowed slice of audio. `anchor_offset` is the signed distance in samples
// from the window center to the nearest known excitation instant (GCI); it is
// unset when no GCI information accompanied the extraction.
struct SignalFrame {
  std::vector<double> samples;
  double sample_rate = 0.0;
  std::optional<long> anchor_offset;
  bool synchronous = false;
  double center_time = 0.0;  // seconds, position of the center sample
  std::size_t center_index = 0;  // sample index of the center in the source

  std::size_t size() const { return samples.size(); }
};

// A finite sequence with an explicit time origin: samples[i] sits at time
// index `start + i`. Used for the two-sided outputs of the decomposition.
struct IndexedSignal {
  std::vector<double> samples;
  long start = 0;
  double sample_rate = 0.0;

  std::size_t size() const { return samples.size(); }
  long first() const { return start; }
  long last() const { return start + static_cast<long>(samples.size()) - 1; }
  double at(long n) const {
    const long i = n - start;
    if (i < 0 || i >= static_cast<long>(samples.size())) return 0.0;
    return samples[static_cast<std::size_t>(i)];
  }
};

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

// Smallest power of two >= 8 * frame_length.
std::size_t default_fft_size(std::size_t frame_length);

// Full linear convolution; the result starts at a.start + b.start.
IndexedSignal convolve(const IndexedSignal& a, const IndexedSignal& b);

double energy(std::span<const double> x);

// Unit-energy RMS distance sqrt(sum((a/|a| - b/|b|)^2)) over the union of
// supports. Returns 0 when both inputs are all zero.
double normalized_rms_difference(const IndexedSignal& a, const IndexedSignal& b);

}  // namespace glottal
