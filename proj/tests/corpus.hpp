#pragma once

// Synthetic corpus shared by the robustness tests and the acceptance run:
// frames placed at a chosen fraction of T0 from each ground-truth GCI.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "glottal/decomposition.hpp"
#include "glottal/framing.hpp"
#include "glottal/synth.hpp"

namespace corpus {

struct Frame {
  glottal::SignalFrame frame;
  double t0 = 0.0;
  long gci_in_frame = 0;  // GCI sample index relative to the frame start
  std::vector<double> pulse;
  std::vector<double> window;
};

inline std::vector<glottal::SyntheticUtterance> utterances(const std::string& preset,
                                                           const std::vector<double>& f0s,
                                                           double duration) {
  std::vector<glottal::SyntheticUtterance> out;
  for (double f0 : f0s) {
    auto s = glottal::preset(preset);
    s.f0 = f0;
    s.duration = duration;
    s.seed = static_cast<std::uint64_t>(f0);
    out.push_back(glottal::synth_utterance(s));
  }
  return out;
}

inline std::vector<Frame> frames_at(const glottal::SyntheticUtterance& u, double offset_frac,
                                    const glottal::WindowSpec& spec = {}) {
  std::vector<Frame> out;
  for (std::size_t i = 1; i + 1 < u.gcis.instants.size(); ++i) {
    const double t0 = *u.pitch.t0_at(u.gcis.instants[i]);
    const double center = u.gcis.instants[i] + offset_frac * t0;
    auto f = glottal::extract_frame_async(u.signal, u.fs, center, t0, spec, &u.gcis);
    if (!f) continue;
    Frame c;
    const long start = static_cast<long>(f->center_index) - static_cast<long>(f->size() / 2);
    c.gci_in_frame = u.gci_samples[i] - start;
    c.t0 = t0;
    c.pulse = u.pulses[i];
    c.window = glottal::make_window(spec.shape, f->size());
    c.frame = std::move(*f);
    out.push_back(std::move(c));
  }
  return out;
}

// The pulse as it appears in the windowed frame, expressed on the anticausal
// component's index axis: anticausal sample j sits at frame sample j + m.
inline glottal::IndexedSignal windowed_truth(const Frame& c, long removed_delay) {
  glottal::IndexedSignal t;
  const long K = static_cast<long>(c.pulse.size());
  const long first_frame = c.gci_in_frame - K + 1;
  t.start = first_frame - removed_delay;
  t.samples.resize(static_cast<std::size_t>(K));
  for (long i = 0; i < K; ++i) {
    const long pos = first_frame + i;
    const double w = pos >= 0 && pos < static_cast<long>(c.window.size()) ? c.window[pos] : 0.0;
    t.samples[static_cast<std::size_t>(i)] = c.pulse[static_cast<std::size_t>(i)] * w;
  }
  return t;
}

// Energy-normalized RMS difference to the windowed pulse, either polarity.
inline double pulse_nrms(const glottal::MixedPhaseDecomposition& d, const Frame& c) {
  const auto truth = windowed_truth(c, d.removed_delay);
  glottal::IndexedSignal a = d.anticausal;
  const double pos = glottal::normalized_rms_difference(a, truth);
  for (auto& v : a.samples) v = -v;
  return std::min(pos, glottal::normalized_rms_difference(a, truth));
}

inline double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace corpus
