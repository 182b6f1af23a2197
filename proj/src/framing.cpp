#include "glottal/framing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "glottal/error.hpp"

namespace glottal {

WindowShape parse_window_shape(const std::string& name) {
  if (name == "blackman") return WindowShape::Blackman;
  if (name == "hann") return WindowShape::Hann;
  if (name == "hamming") return WindowShape::Hamming;
  fail(ErrorKind::invalid_argument, "unknown window shape '" + name + "'");
}

const char* to_string(WindowShape shape) {
  switch (shape) {
    case WindowShape::Blackman: return "blackman";
    case WindowShape::Hann: return "hann";
    case WindowShape::Hamming: return "hamming";
  }
  return "?";
}

long GciTrack::nearest(double t) const {
  if (instants.empty()) return -1;
  auto it = std::lower_bound(instants.begin(), instants.end(), t);
  if (it == instants.end()) return static_cast<long>(instants.size()) - 1;
  long i = it - instants.begin();
  if (i > 0 && t - instants[i - 1] <= *it - t) --i;
  return i;
}

PitchTrack PitchTrack::constant(double t0) {
  PitchTrack p;
  p.points.push_back({0.0, t0});
  return p;
}

std::optional<double> PitchTrack::t0_at(double t) const {
  if (points.empty()) return std::nullopt;
  auto it = std::upper_bound(points.begin(), points.end(), t,
                             [](double v, const auto& p) { return v < p.first; });
  const double t0 = it == points.begin() ? points.front().second : std::prev(it)->second;
  if (!(t0 >= min_t0 && t0 <= max_t0)) return std::nullopt;
  return t0;
}

std::size_t window_length(const WindowSpec& spec, double t0, double sample_rate) {
  if (!(spec.periods > 0) || !(t0 > 0) || !(sample_rate > 0))
    fail(ErrorKind::invalid_argument, "window: periods, T0 and sample rate must be positive");
  auto n = static_cast<std::size_t>(std::llround(spec.periods * t0 * sample_rate));
  if (n % 2 == 0) ++n;
  return n;
}

std::vector<double> make_window(WindowShape shape, std::size_t length) {
  if (length < 5) fail(ErrorKind::invalid_argument, "window shorter than 5 samples");
  std::vector<double> w(length);
  const double m = static_cast<double>(length - 1);
  // fill the first half and mirror, so symmetry is exact
  for (std::size_t k = 0; k <= (length - 1) / 2; ++k) {
    const double p = 2.0 * std::numbers::pi * static_cast<double>(k) / m;
    double v = 0.0;
    switch (shape) {
      case WindowShape::Blackman: v = 0.42 - 0.5 * std::cos(p) + 0.08 * std::cos(2.0 * p); break;
      case WindowShape::Hann: v = 0.5 - 0.5 * std::cos(p); break;
      case WindowShape::Hamming: v = 0.54 - 0.46 * std::cos(p); break;
    }
    w[k] = v;
    w[length - 1 - k] = v;
  }
  const double peak = *std::max_element(w.begin(), w.end());
  for (auto& v : w) v /= peak;
  if (shape == WindowShape::Hann) w.front() = w.back() = 0.0;
  return w;
}

std::vector<double> make_window(const WindowSpec& spec, double t0, double sample_rate) {
  return make_window(spec.shape, window_length(spec, t0, sample_rate));
}

namespace {

std::optional<SignalFrame> cut(std::span<const double> signal, double sample_rate,
                               long center, double t0, const WindowSpec& spec) {
  const std::vector<double> w = make_window(spec, t0, sample_rate);
  const long half = static_cast<long>(w.size() - 1) / 2;
  const long lo = center - half;
  if (lo < 0 || lo + static_cast<long>(w.size()) > static_cast<long>(signal.size()))
    return std::nullopt;
  SignalFrame f;
  f.sample_rate = sample_rate;
  f.samples.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) f.samples[i] = signal[lo + i] * w[i];
  f.center_index = static_cast<std::size_t>(center);
  f.center_time = static_cast<double>(center) / sample_rate;
  return f;
}

}  // namespace

std::optional<SignalFrame> extract_frame_sync(std::span<const double> signal,
                                              double sample_rate, double gci, double t0,
                                              const WindowSpec& spec) {
  auto f = cut(signal, sample_rate, std::lround(gci * sample_rate), t0, spec);
  if (f) {
    f->synchronous = true;
    f->anchor_offset = 0;
  }
  return f;
}

std::optional<SignalFrame> extract_frame_async(std::span<const double> signal,
                                               double sample_rate, double center, double t0,
                                               const WindowSpec& spec, const GciTrack* gcis) {
  const long c = std::lround(center * sample_rate);
  auto f = cut(signal, sample_rate, c, t0, spec);
  if (f && gcis != nullptr && !gcis->instants.empty()) {
    const long g = gcis->nearest(center);
    f->anchor_offset = c - std::lround(gcis->instants[static_cast<std::size_t>(g)] * sample_rate);
  }
  return f;
}

namespace {

// Yields (line_number, fields) for each non-blank, non-comment line.
template <typename F>
void for_each_record(std::istream& in, F&& fn) {
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    std::vector<std::string> fields;
    for (std::string tok; ss >> tok;) fields.push_back(tok);
    if (!fields.empty()) fn(lineno, fields);
  }
}

double parse_number(const std::string& s, long lineno) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::parse_error,
         "line " + std::to_string(lineno) + ": cannot parse number '" + s + "'");
  }
}

}  // namespace

GciTrack parse_gci_markers(std::istream& in) {
  GciTrack t;
  for_each_record(in, [&](long lineno, const std::vector<std::string>& f) {
    if (f.size() != 1)
      fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": expected one time value");
    const double v = parse_number(f[0], lineno);
    if (v < 0 || (!t.instants.empty() && v <= t.instants.back()))
      fail(ErrorKind::parse_error,
           "line " + std::to_string(lineno) + ": GCI times must be non-negative and increasing");
    t.instants.push_back(v);
  });
  return t;
}

PitchTrack parse_pitch_track(std::istream& in) {
  PitchTrack p;
  for_each_record(in, [&](long lineno, const std::vector<std::string>& f) {
    if (f.size() != 2)
      fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": expected time_s and T0_s");
    const double t = parse_number(f[0], lineno);
    const double t0 = parse_number(f[1], lineno);
    if (!p.points.empty() && t <= p.points.back().first)
      fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": times must increase");
    if (t0 <= 0)
      fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": T0 must be positive");
    p.points.push_back({t, t0});
  });
  return p;
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io_error, "cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io_error, "cannot write " + path);
  out.precision(9);
  return out;
}

}  // namespace

GciTrack read_gci_file(const std::string& path) {
  auto in = open_in(path);
  try {
    return parse_gci_markers(in);
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

PitchTrack read_pitch_file(const std::string& path) {
  auto in = open_in(path);
  try {
    return parse_pitch_track(in);
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

void write_gci_file(const std::string& path, const GciTrack& track) {
  auto out = open_out(path);
  for (double t : track.instants) out << t << '\n';
}

void write_pitch_file(const std::string& path, const PitchTrack& track) {
  auto out = open_out(path);
  for (const auto& [t, t0] : track.points) out << t << '\t' << t0 << '\n';
}

}  // namespace glottal
