#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glottal/signal.hpp"

namespace glottal {

enum class WindowShape { Blackman, Hann, Hamming };

WindowShape parse_window_shape(const std::string& name);
const char* to_string(WindowShape shape);

struct WindowSpec {
  WindowShape shape = WindowShape::Blackman;
  double periods = 2.0;
};

struct GciTrack {
  std::vector<double> instants;  // seconds, strictly increasing

  // Index of the GCI closest to `t`, or -1 when the track is empty.
  long nearest(double t) const;
};

// Piecewise-constant pitch: the T0 of the last point at or before t applies,
// and the first point covers everything before it.
struct PitchTrack {
  std::vector<std::pair<double, double>> points;  // (time_s, T0_s)
  double min_t0 = 1.0 / 500.0;
  double max_t0 = 1.0 / 50.0;

  static PitchTrack constant(double t0);

  // T0 at `t`, or nullopt when outside the speech range guard.
  std::optional<double> t0_at(double t) const;
};

std::size_t window_length(const WindowSpec& spec, double t0, double sample_rate);

std::vector<double> make_window(WindowShape shape, std::size_t length);
std::vector<double> make_window(const WindowSpec& spec, double t0, double sample_rate);

// Both return nullopt when the window does not fit inside the signal.
std::optional<SignalFrame> extract_frame_sync(std::span<const double> signal,
                                              double sample_rate, double gci, double t0,
                                              const WindowSpec& spec);

std::optional<SignalFrame> extract_frame_async(std::span<const double> signal,
                                               double sample_rate, double center, double t0,
                                               const WindowSpec& spec,
                                               const GciTrack* gcis = nullptr);

// Marker files. Parse errors carry the 1-based line number.
GciTrack parse_gci_markers(std::istream& in);
PitchTrack parse_pitch_track(std::istream& in);
GciTrack read_gci_file(const std::string& path);
PitchTrack read_pitch_file(const std::string& path);
void write_gci_file(const std::string& path, const GciTrack& track);
void write_pitch_file(const std::string& path, const PitchTrack& track);

}  // namespace glottal
