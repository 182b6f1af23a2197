#include "glottal/signal.hpp"

#include <algorithm>
#include <cmath>

namespace glottal {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::size_t default_fft_size(std::size_t frame_length) {
  // the floor keeps cepstral aliasing down for very short frames
  return std::max<std::size_t>(1024, next_power_of_two(8 * std::max<std::size_t>(frame_length, 1)));
}

IndexedSignal convolve(const IndexedSignal& a, const IndexedSignal& b) {
  IndexedSignal out;
  out.sample_rate = a.sample_rate > 0 ? a.sample_rate : b.sample_rate;
  out.start = a.start + b.start;
  if (a.samples.empty() || b.samples.empty()) return out;
  out.samples.assign(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a.samples[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out.samples[i + j] += ai * b.samples[j];
  }
  return out;
}

double energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

double normalized_rms_difference(const IndexedSignal& a, const IndexedSignal& b) {
  const double ea = std::sqrt(energy(a.samples));
  const double eb = std::sqrt(energy(b.samples));
  if (ea == 0.0 && eb == 0.0) return 0.0;
  const long lo = std::min(a.first(), b.first());
  const long hi = std::max(a.last(), b.last());
  double acc = 0.0;
  for (long n = lo; n <= hi; ++n) {
    const double va = ea > 0 ? a.at(n) / ea : 0.0;
    const double vb = eb > 0 ? b.at(n) / eb : 0.0;
    acc += (va - vb) * (va - vb);
  }
  return std::sqrt(acc);
}

}  // namespace glottal
