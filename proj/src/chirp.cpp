#include "glottal/chirp.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "glottal/error.hpp"
#include "glottal/spectral.hpp"

namespace glottal {

std::vector<double> chirp_modulate(std::span<const double> samples, double radius) {
  if (!(radius > 0)) fail(ErrorKind::invalid_argument, "radius must be positive");
  std::vector<double> y(samples.begin(), samples.end());
  if (radius == 1.0) return y;
  for (std::size_t n = 0; n < y.size(); ++n) y[n] *= std::pow(radius, -static_cast<double>(n));
  return y;
}

SignalFrame chirp_modulate(const SignalFrame& frame, double radius) {
  SignalFrame out = frame;
  out.samples = chirp_modulate(frame.samples, radius);
  return out;
}

long circular_delay(std::span<const double> samples, double radius, std::size_t fft_size,
                    bool* low_confidence) {
  std::vector<double> x = chirp_modulate(samples, radius);
  if (std::accumulate(x.begin(), x.end(), 0.0) < 0.0)
    for (auto& v : x) v = -v;
  const UnwrappedPhase ph = unwrap_phase(analyze(x, fft_size));
  if (low_confidence != nullptr) *low_confidence = ph.low_confidence;
  return round_half_away(ph.phi_at_pi / std::numbers::pi);
}

std::pair<double, double> radius_bounds(std::size_t frame_length) {
  if (frame_length == 0) fail(ErrorKind::invalid_argument, "frame length must be positive");
  const double b = 50.0 * std::numbers::pi / (17.0 * static_cast<double>(frame_length));
  return {std::exp(-b), std::exp(b)};
}

std::vector<Plateau> find_plateaus(std::span<const long> n_d) {
  std::vector<Plateau> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= n_d.size(); ++i) {
    if (i == n_d.size() || n_d[i] != n_d[start]) {
      out.push_back({start, i - 1, n_d[start]});
      start = i;
    }
  }
  return out;
}

RadiusSearchResult find_optimal_radius(std::span<const double> samples, std::size_t n_radii,
                                       std::size_t fft_size) {
  const std::size_t L = samples.size();
  if (L < 5) fail(ErrorKind::invalid_argument, "radius search needs at least 5 samples");
  if (n_radii < 2) fail(ErrorKind::invalid_argument, "radius grid needs at least 2 points");
  if (fft_size == 0) fft_size = default_fft_size(L);

  RadiusSearchResult r;
  r.bounds = radius_bounds(L);
  const auto [lo, hi] = r.bounds;
  r.radii.resize(n_radii);
  r.n_d.resize(n_radii);
  for (std::size_t i = 0; i < n_radii; ++i) {
    r.radii[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_radii - 1);
    bool lc = false;
    r.n_d[i] = circular_delay(samples, r.radii[i], fft_size, &lc);
    r.low_confidence = r.low_confidence || lc;
  }
  r.plateaus = find_plateaus(r.n_d);

  // widest plateau; on ties, the one whose midpoint is nearest 1
  double best_dist = 0.0;
  for (std::size_t p = 0; p < r.plateaus.size(); ++p) {
    const Plateau& pl = r.plateaus[p];
    const double mid = 0.5 * (r.radii[pl.start_idx] + r.radii[pl.end_idx]);
    const double dist = std::abs(mid - 1.0);
    const std::size_t best_len = r.plateaus[r.best_plateau].length();
    if (p == 0 || pl.length() > best_len || (pl.length() == best_len && dist < best_dist)) {
      r.best_plateau = p;
      best_dist = dist;
      r.optimal_radius = mid;
    }
  }
  if (r.plateaus[r.best_plateau].length() < 2) {
    r.degenerate = true;
    r.optimal_radius = 1.0;
  }
  return r;
}

MixedPhaseDecomposition decompose_chirp(const SignalFrame& frame, std::size_t fft_size,
                                        std::size_t n_radii, RadiusSearchResult* search) {
  if (fft_size == 0) fft_size = default_fft_size(frame.size());
  RadiusSearchResult r = find_optimal_radius(frame.samples, n_radii, fft_size);
  MixedPhaseDecomposition d =
      decompose_at_radius(frame.samples, r.optimal_radius, fft_size, frame.sample_rate);
  d.flags.degenerate_search = r.degenerate;
  if (search != nullptr) *search = std::move(r);
  return d;
}

}  // namespace glottal
