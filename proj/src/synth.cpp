#include "glottal/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "glottal/error.hpp"

namespace glottal {

namespace {

constexpr double kTruncation = 1e-4;  // -80 dB

std::size_t pulse_length(const PulseParams& p) {
  // rho^n * |cos| <= rho^n, so past this point nothing is above the cutoff
  const double phi = p.phase_or_default();
  const auto limit = static_cast<std::size_t>(std::ceil(std::log(kTruncation) / std::log(p.rho))) + 2;
  double peak = 0.0;
  std::vector<double> h(limit);
  for (std::size_t n = 0; n < limit; ++n) {
    h[n] = std::pow(p.rho, static_cast<double>(n)) * std::cos(static_cast<double>(n) * p.theta + phi);
    peak = std::max(peak, std::abs(h[n]));
  }
  std::size_t last = 0;
  for (std::size_t n = 0; n < limit; ++n)
    if (std::abs(h[n]) > kTruncation * peak) last = n;
  return last + 1;
}

}  // namespace

double PulseParams::phase_or_default() const {
  return phase.value_or(theta - std::numbers::pi / 2);
}

double pulse_function(const PulseParams& p, double norm, double t) {
  const double u = -t;
  return -std::pow(p.rho, u) * std::cos(u * p.theta + p.phase_or_default()) / norm;
}

MaxPhasePulse gen_maxphase_pulse(const PulseParams& p, double t0, double fs) {
  if (!(p.rho > 0.5 && p.rho < 0.99))
    fail(ErrorKind::invalid_argument, "pulse rho must lie in (0.5, 0.99)");
  if (!(p.theta > 0 && p.theta < std::numbers::pi))
    fail(ErrorKind::invalid_argument, "pulse theta must lie in (0, pi)");
  const std::size_t K = pulse_length(p);
  if (static_cast<double>(K) >= t0 * fs)
    fail(ErrorKind::invalid_argument, "pulse of " + std::to_string(K) +
                                          " samples does not fit in one period");
  const double phi = p.phase_or_default();
  std::vector<double> h(K);
  double norm = 0.0;
  for (std::size_t n = 0; n < K; ++n) {
    h[n] = std::pow(p.rho, static_cast<double>(n)) * std::cos(static_cast<double>(n) * p.theta + phi);
    norm = std::max(norm, std::abs(h[n]));
  }
  MaxPhasePulse out;
  out.samples.resize(K);
  for (std::size_t i = 0; i < K; ++i) out.samples[i] = -h[K - 1 - i] / norm;

  // stationary points of rho^u cos(u theta + phi): tan(u theta + phi) = ln(rho)/theta
  std::vector<double> cand{0.0, static_cast<double>(K - 1)};
  const double base = std::atan(std::log(p.rho) / p.theta);
  for (long k = -2; k <= static_cast<long>(K * p.theta / std::numbers::pi) + 2; ++k) {
    const double u = (base + static_cast<double>(k) * std::numbers::pi - phi) / p.theta;
    if (u >= 0 && u <= static_cast<double>(K - 1)) cand.push_back(u);
  }
  out.analytic_max = -1e300;
  out.analytic_min = 1e300;
  for (double u : cand) {
    const double v = pulse_function(p, norm, -u);
    out.analytic_max = std::max(out.analytic_max, v);
    out.analytic_min = std::min(out.analytic_min, v);
  }
  return out;
}

AllPoleFilter gen_allpole_tract(const std::vector<Formant>& formants, double fs) {
  AllPoleFilter f;
  for (const auto& fm : formants) {
    if (!(fm.bandwidth_hz > 0)) fail(ErrorKind::invalid_argument, "formant bandwidth must be positive");
    if (!(fm.center_hz > 0 && fm.center_hz < fs / 2))
      fail(ErrorKind::invalid_argument, "formant center must lie in (0, fs/2)");
    const double r = std::exp(-std::numbers::pi * fm.bandwidth_hz / fs);
    const double w = 2.0 * std::numbers::pi * fm.center_hz / fs;
    if (!(r < 1.0)) fail(ErrorKind::invalid_argument, "formant pole on or outside the unit circle");
    const double sec[3] = {1.0, -2.0 * r * std::cos(w), r * r};
    std::vector<double> next(f.a.size() + 2, 0.0);
    for (std::size_t i = 0; i < f.a.size(); ++i)
      for (std::size_t j = 0; j < 3; ++j) next[i + j] += f.a[i] * sec[j];
    f.a = std::move(next);
    f.poles.push_back(std::polar(r, w));
    f.poles.push_back(std::polar(r, -w));
  }
  return f;
}

std::vector<double> filter_allpole(const AllPoleFilter& f, const std::vector<double>& x) {
  std::vector<double> y(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = x[n];
    for (std::size_t k = 1; k < f.a.size() && k <= n; ++k) acc -= f.a[k] * y[n - k];
    y[n] = acc;
  }
  return y;
}

namespace {

double f0_at(const SyntheticSpec& s, double t) {
  double f0 = s.f0;
  for (const auto& [time, value] : s.f0_contour)
    if (time <= t) f0 = value;
  return f0;
}

}  // namespace

SyntheticUtterance synth_utterance(const SyntheticSpec& spec) {
  if (!(spec.fs > 0) || !(spec.f0 > 0) || !(spec.duration > 0))
    fail(ErrorKind::invalid_argument, "fs, f0 and duration must be positive");
  double f0_min = spec.f0;
  for (const auto& [t, v] : spec.f0_contour) {
    if (!(v > 0)) fail(ErrorKind::invalid_argument, "f0 contour values must be positive");
    f0_min = std::min(f0_min, v);
  }
  if (spec.duration * f0_min < 3.0)
    fail(ErrorKind::invalid_argument, "utterance shorter than 3 periods");
  if (!(spec.jitter >= 0 && spec.jitter < 0.5))
    fail(ErrorKind::invalid_argument, "jitter must lie in [0, 0.5)");

  double f0_max = spec.f0;
  for (const auto& [t, v] : spec.f0_contour) f0_max = std::max(f0_max, v);
  const MaxPhasePulse pulse =
      gen_maxphase_pulse(spec.pulse, (1.0 - spec.jitter) / f0_max, spec.fs);
  const auto K = static_cast<long>(pulse.samples.size());

  SyntheticUtterance u;
  u.fs = spec.fs;
  const auto n = static_cast<long>(std::llround(spec.duration * spec.fs));
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> jit(-1.0, 1.0);

  for (long g = K + 5; g < n;) {
    for (long i = 0; i < K; ++i) e[static_cast<std::size_t>(g - K + 1 + i)] += pulse.samples[i];
    const double t = static_cast<double>(g) / spec.fs;
    const double period = spec.fs / f0_at(spec, t);
    const double j = spec.jitter > 0 ? spec.jitter * jit(rng) : 0.0;
    const long step = std::lround(period * (1.0 + j));
    u.gci_samples.push_back(g);
    u.gcis.instants.push_back(t);
    u.pitch.points.push_back({t, static_cast<double>(step) / spec.fs});
    u.pulses.push_back(pulse.samples);
    g += step;
  }

  u.signal = filter_allpole(gen_allpole_tract(spec.formants, spec.fs), e);
  double peak = 0.0;
  for (double v : u.signal) peak = std::max(peak, std::abs(v));
  if (peak > 0)
    for (auto& v : u.signal) v *= spec.amplitude / peak;
  return u;
}

namespace {

std::vector<Formant> default_formants() {
  return {{700, 30}, {1400, 40}, {2600, 50}, {3600, 60}, {4700, 80}};
}

}  // namespace

SyntheticSpec preset(const std::string& name) {
  SyntheticSpec s;
  s.formants = default_formants();
  s.jitter = 0.02;
  // zero phase puts the sharpest negative derivative at the closure instant
  s.pulse.phase = 0.0;
  // shorter, more abruptly closing open phase for tense phonation
  if (name == "tense") {
    s.pulse.rho = 0.80;
    s.pulse.theta = 0.06 * std::numbers::pi;
  } else if (name == "modal") {
    s.pulse.rho = 0.85;
    s.pulse.theta = 0.05 * std::numbers::pi;
  } else if (name == "lax") {
    s.pulse.rho = 0.88;
    s.pulse.theta = 0.04 * std::numbers::pi;
  } else {
    fail(ErrorKind::invalid_argument, "unknown preset '" + name + "'");
  }
  return s;
}

std::vector<std::string> preset_names() { return {"tense", "modal", "lax"}; }

}  // namespace glottal
