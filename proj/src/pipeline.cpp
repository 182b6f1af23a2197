#include "glottal/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "glottal/error.hpp"

namespace glottal {

Mode parse_mode(const std::string& s) {
  if (s == "sync") return Mode::Sync;
  if (s == "async") return Mode::Async;
  fail(ErrorKind::invalid_argument, "unknown mode '" + s + "' (sync|async)");
}

Method parse_method(const std::string& s) {
  if (s == "traditional") return Method::Traditional;
  if (s == "chirp") return Method::Chirp;
  if (s == "both") return Method::Both;
  fail(ErrorKind::invalid_argument, "unknown method '" + s + "' (traditional|chirp|both)");
}

std::size_t fft_size_for(const RunConfig& cfg, std::size_t frame_length) {
  if (cfg.fft_factor < 1) fail(ErrorKind::invalid_argument, "fft factor must be >= 1");
  return next_power_of_two(cfg.fft_factor * frame_length);
}

void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

FrameResult analyze_frame(const SignalFrame& frame, double t0, bool chirp, const RunConfig& cfg) {
  const std::size_t nfft = fft_size_for(cfg, frame.size());
  FrameResult r;
  r.decomposition = chirp ? decompose_chirp(frame, nfft, cfg.n_radii)
                          : decompose_traditional(frame, nfft);
  const double cog =
      anticausal_cog(r.decomposition.anticausal, t0, frame.sample_rate, cfg.weighting);
  r.quality = classify_decomposition(cog, cfg.cog_threshold_hz);
  if (r.quality.correct) {
    GlottalFeatures f = extract_features(r.decomposition.anticausal, t0, frame.sample_rate);
    f.quality = r.quality;
    r.features = std::move(f);
  }
  return r;
}

PitchTrack pitch_from_gcis(const GciTrack& gcis) {
  PitchTrack p;
  const auto& g = gcis.instants;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) p.points.push_back({g[i], g[i + 1] - g[i]});
  if (g.size() >= 2) p.points.push_back({g.back(), g.back() - g[g.size() - 2]});
  return p;
}

namespace {

struct FramePlan {
  SignalFrame frame;
  double t0 = 0.0;
};

FrameRecord to_record(long id, const SignalFrame& f, const char* method, const FrameResult& r) {
  FrameRecord rec;
  rec.frame_id = id;
  rec.time_s = f.center_time;
  rec.method = method;
  rec.radius_used = r.decomposition.radius_used;
  rec.n_d = r.decomposition.circular_delay();
  rec.cog_hz = r.quality.cog;
  rec.correct = r.quality.correct;
  if (r.features) {
    rec.naq = r.features->naq;
    rec.h1h2_db = r.features->h1h2;
    rec.hrf_db = r.features->hrf;
  }
  return rec;
}

}  // namespace

AnalysisOutput analyze_signal(std::span<const double> signal, double sample_rate,
                              const RunConfig& cfg, const GciTrack* gcis,
                              const PitchTrack* pitch) {
  if (cfg.mode == Mode::Sync && (gcis == nullptr || gcis->instants.empty()))
    fail(ErrorKind::invalid_argument, "sync mode requires a GCI file");
  if (cfg.mode == Mode::Async && pitch == nullptr)
    fail(ErrorKind::invalid_argument, "async mode requires a pitch track");
  if (cfg.mode == Mode::Async && !(cfg.shift_ms > 0))
    fail(ErrorKind::invalid_argument, "frame shift must be positive");

  PitchTrack derived;
  if (pitch == nullptr) {
    derived = pitch_from_gcis(*gcis);
    pitch = &derived;
  }

  AnalysisOutput out;
  std::vector<FramePlan> plan;
  auto add = [&](std::optional<SignalFrame> f, double t0) {
    if (f) plan.push_back({std::move(*f), t0});
    else ++out.summary.skipped;
  };
  const double duration = static_cast<double>(signal.size()) / sample_rate;
  if (cfg.mode == Mode::Sync) {
    for (double g : gcis->instants) {
      const auto t0 = pitch->t0_at(g);
      if (!t0) { ++out.summary.skipped; continue; }
      add(extract_frame_sync(signal, sample_rate, g, *t0, cfg.window), *t0);
    }
  } else {
    const double shift = cfg.shift_ms / 1000.0;
    const auto count = static_cast<long>(std::floor(duration / shift)) + 1;
    for (long k = 0; k < count; ++k) {
      const double c = static_cast<double>(k) * shift;
      const auto t0 = pitch->t0_at(c);
      if (!t0) { ++out.summary.skipped; continue; }
      add(extract_frame_async(signal, sample_rate, c, *t0, cfg.window, gcis), *t0);
    }
  }
  out.summary.frames = plan.size();

  const bool do_trad = cfg.method != Method::Chirp;
  const bool do_chirp = cfg.method != Method::Traditional;
  std::vector<std::optional<FrameResult>> trad(plan.size()), chirp(plan.size());
  parallel_for(plan.size(), cfg.threads, [&](std::size_t i) {
    if (do_trad) trad[i] = analyze_frame(plan[i].frame, plan[i].t0, false, cfg);
    if (do_chirp) chirp[i] = analyze_frame(plan[i].frame, plan[i].t0, true, cfg);
  });

  std::vector<QualityLabel> lt, lc;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const long id = static_cast<long>(i);
    if (trad[i]) {
      out.rows.push_back(to_record(id, plan[i].frame, "traditional", *trad[i]));
      lt.push_back(trad[i]->quality);
      if (trad[i]->features) {
        out.features_traditional.push_back(*trad[i]->features);
        out.features_traditional.back().frame_id = id;
      }
    }
    if (chirp[i]) {
      out.rows.push_back(to_record(id, plan[i].frame, "chirp", *chirp[i]));
      lc.push_back(chirp[i]->quality);
      if (chirp[i]->features) {
        out.features_chirp.push_back(*chirp[i]->features);
        out.features_chirp.back().frame_id = id;
      }
    }
  }
  if (!lt.empty()) out.summary.rate_traditional = correct_rate(lt);
  if (!lc.empty()) out.summary.rate_chirp = correct_rate(lc);
  return out;
}

std::vector<RobustnessRow> bench_robustness(std::span<const double> signal, double sample_rate,
                                            const GciTrack& gcis, const PitchTrack* pitch,
                                            std::span<const double> offsets,
                                            const RunConfig& cfg) {
  if (offsets.empty()) fail(ErrorKind::invalid_argument, "offset list is empty");
  if (gcis.instants.empty()) fail(ErrorKind::invalid_argument, "robustness bench needs GCIs");
  const PitchTrack derived = pitch_from_gcis(gcis);
  if (pitch == nullptr) pitch = &derived;

  struct Job {
    std::size_t offset_idx;
    SignalFrame frame;
    double t0;
  };
  std::vector<Job> jobs;
  for (std::size_t o = 0; o < offsets.size(); ++o) {
    for (double g : gcis.instants) {
      const auto t0 = pitch->t0_at(g);
      if (!t0) continue;
      // offsets are rounded to whole samples relative to the GCI sample
      const long shift = std::lround(offsets[o] * *t0 * sample_rate);
      const double center = static_cast<double>(std::lround(g * sample_rate) + shift) / sample_rate;
      auto f = extract_frame_async(signal, sample_rate, center, *t0, cfg.window, &gcis);
      if (f) jobs.push_back({o, std::move(*f), *t0});
    }
  }

  std::vector<char> ok_t(jobs.size()), ok_c(jobs.size());
  parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
    ok_t[i] = analyze_frame(jobs[i].frame, jobs[i].t0, false, cfg).quality.correct;
    ok_c[i] = analyze_frame(jobs[i].frame, jobs[i].t0, true, cfg).quality.correct;
  });

  std::vector<RobustnessRow> rows(offsets.size());
  for (std::size_t o = 0; o < offsets.size(); ++o) rows[o].offset_frac = offsets[o];
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto& r = rows[jobs[i].offset_idx];
    ++r.frames;
    r.rate_traditional += ok_t[i];
    r.rate_chirp += ok_c[i];
  }
  for (auto& r : rows) {
    if (r.frames == 0) fail(ErrorKind::empty_output, "no frame fits at offset " + std::to_string(r.offset_frac));
    r.rate_traditional /= static_cast<double>(r.frames);
    r.rate_chirp /= static_cast<double>(r.frames);
  }
  return rows;
}

void write_summary(std::ostream& out, const AnalysisSummary& s) {
  out << "frames\t" << s.frames << '\n' << "skipped\t" << s.skipped << '\n';
  if (s.rate_traditional) out << "correct_rate_traditional\t" << format_number(*s.rate_traditional) << '\n';
  if (s.rate_chirp) out << "correct_rate_chirp\t" << format_number(*s.rate_chirp) << '\n';
}

}  // namespace glottal
