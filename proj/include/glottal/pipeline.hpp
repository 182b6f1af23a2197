#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "glottal/chirp.hpp"
#include "glottal/features.hpp"
#include "glottal/framing.hpp"
#include "glottal/quality.hpp"
#include "glottal/table_io.hpp"

namespace glottal {

enum class Mode { Sync, Async };
enum class Method { Traditional, Chirp, Both };

Mode parse_mode(const std::string& s);
Method parse_method(const std::string& s);

struct RunConfig {
  Mode mode = Mode::Sync;
  Method method = Method::Both;
  double shift_ms = 10.0;
  WindowSpec window;
  std::size_t fft_factor = 8;  // fft size = next pow2 >= fft_factor * L
  std::size_t n_radii = kDefaultRadii;
  double cog_threshold_hz = kDefaultCogThreshold;
  CogWeighting weighting = CogWeighting::Magnitude;
  std::size_t threads = 0;  // 0: hardware concurrency
  std::uint64_t seed = 1;
};

std::size_t fft_size_for(const RunConfig& cfg, std::size_t frame_length);

// Runs fn(i) for i in [0, n) on a small thread pool. Work is handed out in
// index order; results must be written to slot i so the merge is ordered.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

struct FrameResult {
  MixedPhaseDecomposition decomposition;
  QualityLabel quality;
  std::optional<GlottalFeatures> features;  // only for correct frames
};

// Decompose one frame with one method, label it and, if correct, extract features.
FrameResult analyze_frame(const SignalFrame& frame, double t0, bool chirp, const RunConfig& cfg);

struct AnalysisSummary {
  std::size_t frames = 0;   // analyzed frame positions
  std::size_t skipped = 0;  // rejected by bounds or the T0 guard
  std::optional<double> rate_traditional;
  std::optional<double> rate_chirp;
};

struct AnalysisOutput {
  std::vector<FrameRecord> rows;  // ordered by frame, traditional before chirp
  std::vector<GlottalFeatures> features_traditional, features_chirp;
  AnalysisSummary summary;
};

// T0 from GCI spacing: distance to the next GCI (previous one for the last).
PitchTrack pitch_from_gcis(const GciTrack& gcis);

AnalysisOutput analyze_signal(std::span<const double> signal, double sample_rate,
                              const RunConfig& cfg, const GciTrack* gcis,
                              const PitchTrack* pitch);

struct RobustnessRow {
  double offset_frac = 0.0;
  double rate_traditional = 0.0;
  double rate_chirp = 0.0;
  std::size_t frames = 0;
};

// For each offset (fraction of T0), center a window at GCI + offset*T0 and
// report correct-decomposition rates for both methods.
std::vector<RobustnessRow> bench_robustness(std::span<const double> signal, double sample_rate,
                                            const GciTrack& gcis, const PitchTrack* pitch,
                                            std::span<const double> offsets, const RunConfig& cfg);

void write_summary(std::ostream& out, const AnalysisSummary& s);

}  // namespace glottal
