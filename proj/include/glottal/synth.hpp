#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glottal/framing.hpp"

namespace glottal {

// Open-phase pulse: the time reversal of h(n) = rho^n cos(n*theta + phase),
// negated so the closure is a negative excursion, normalized to max|h| = 1
// and truncated where |h| drops below -80 dB. phase = theta - pi/2 gives the
// plain two-pole resonator response (rho^n sin((n+1) theta) / sin theta).
struct PulseParams {
  double rho = 0.88;
  double theta = 0.05 * 3.14159265358979323846;
  std::optional<double> phase;  // unset: plain resonator

  double phase_or_default() const;
};

struct Formant {
  double center_hz = 0.0;
  double bandwidth_hz = 0.0;
};

struct SyntheticSpec {
  double f0 = 200.0;
  std::vector<std::pair<double, double>> f0_contour;  // optional (time_s, f0) steps
  double fs = 16000.0;
  double duration = 1.0;
  PulseParams pulse;
  std::vector<Formant> formants;
  double jitter = 0.0;  // fraction of T0, uniform
  double amplitude = 0.5;
  std::uint64_t seed = 1;
};

struct MaxPhasePulse {
  std::vector<double> samples;  // last sample is the closure instant
  // continuous-time extrema of the pulse envelope function in the same units
  double analytic_max = 0.0;
  double analytic_min = 0.0;
  double peak_to_peak() const { return analytic_max - analytic_min; }
};

MaxPhasePulse gen_maxphase_pulse(const PulseParams& p, double t0, double fs);

// Continuous version of the pulse, t in samples relative to the closure
// (t <= 0), before truncation and in the same scaling as the samples.
double pulse_function(const PulseParams& p, double norm, double t);

struct AllPoleFilter {
  std::vector<double> a{1.0};  // a[0] = 1
  std::vector<std::complex<double>> poles;
};

AllPoleFilter gen_allpole_tract(const std::vector<Formant>& formants, double fs);

std::vector<double> filter_allpole(const AllPoleFilter& f, const std::vector<double>& x);

struct SyntheticUtterance {
  std::vector<double> signal;
  double fs = 0.0;
  GciTrack gcis;
  PitchTrack pitch;
  std::vector<std::vector<double>> pulses;  // one per GCI
  std::vector<long> gci_samples;
};

SyntheticUtterance synth_utterance(const SyntheticSpec& spec);

// Named phonation settings; same tract and pitch, different open phase.
SyntheticSpec preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace glottal
