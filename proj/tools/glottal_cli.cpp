// Command-line front end: analyze, bench-robustness, synth, radius-scan.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "glottal/chirp.hpp"
#include "glottal/error.hpp"
#include "glottal/pipeline.hpp"
#include "glottal/synth.hpp"
#include "glottal/table_io.hpp"
#include "glottal/wav.hpp"
#include "glottal/zzt.hpp"

namespace fs = std::filesystem;
using namespace glottal;

namespace {

struct CommonOptions {
  std::string mode = "sync";
  std::string method = "both";
  double shift_ms = 10.0;
  double window_periods = 2.0;
  std::string window_shape = "blackman";
  std::size_t n_radii = kDefaultRadii;
  double cog_threshold = kDefaultCogThreshold;
  std::size_t fft_factor = 8;
  std::string gci_file;
  std::string pitch_file;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string weighting = "magnitude";

  RunConfig config() const {
    RunConfig c;
    c.mode = parse_mode(mode);
    c.method = parse_method(method);
    c.shift_ms = shift_ms;
    c.window.periods = window_periods;
    c.window.shape = parse_window_shape(window_shape);
    c.n_radii = n_radii;
    c.cog_threshold_hz = cog_threshold;
    c.fft_factor = fft_factor;
    c.seed = seed;
    c.threads = threads;
    if (weighting == "magnitude") c.weighting = CogWeighting::Magnitude;
    else if (weighting == "power") c.weighting = CogWeighting::Power;
    else fail(ErrorKind::invalid_argument, "unknown weighting '" + weighting + "'");
    return c;
  }
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--mode", o.mode, "sync | async")->capture_default_str();
  cmd->add_option("--method", o.method, "traditional | chirp | both")->capture_default_str();
  cmd->add_option("--shift-ms", o.shift_ms, "frame shift in async mode")->capture_default_str();
  cmd->add_option("--window-periods", o.window_periods, "window length in pitch periods")->capture_default_str();
  cmd->add_option("--window-shape", o.window_shape, "blackman | hann | hamming")->capture_default_str();
  cmd->add_option("--n-radii", o.n_radii, "radius grid size")->capture_default_str();
  cmd->add_option("--cog-threshold", o.cog_threshold, "COG threshold in Hz")->capture_default_str();
  cmd->add_option("--cog-weighting", o.weighting, "magnitude | power")->capture_default_str();
  cmd->add_option("--fft-factor", o.fft_factor, "fft size = next pow2 >= factor * L")->capture_default_str();
  cmd->add_option("--gci-file", o.gci_file, "GCI markers, one time (s) per line");
  cmd->add_option("--pitch-file", o.pitch_file, "pitch track, time_s<TAB>T0_s per line");
  cmd->add_option("--out-dir", o.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker threads, 0 = all cores")->capture_default_str();
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) fail(ErrorKind::io_error, "cannot write " + p.string());
  return out;
}

int run_analyze(const CommonOptions& o, const std::string& wav_path) {
  const RunConfig cfg = o.config();
  const WavData wav = read_wav(wav_path);
  std::optional<GciTrack> gcis;
  std::optional<PitchTrack> pitch;
  if (!o.gci_file.empty()) gcis = read_gci_file(o.gci_file);
  if (!o.pitch_file.empty()) pitch = read_pitch_file(o.pitch_file);

  const AnalysisOutput res = analyze_signal(wav.samples, wav.sample_rate, cfg,
                                            gcis ? &*gcis : nullptr, pitch ? &*pitch : nullptr);
  fs::create_directories(o.out_dir);
  {
    auto out = open_out(fs::path(o.out_dir) / "frames.csv");
    write_frame_csv(out, res.rows);
  }
  {
    auto out = open_out(fs::path(o.out_dir) / "summary.tsv");
    write_summary(out, res.summary);
  }
  for (const char* m : {"traditional", "chirp"}) {
    std::vector<double> cogs;
    for (const auto& r : res.rows)
      if (r.method == m) cogs.push_back(r.cog_hz);
    if (cogs.empty()) continue;
    auto out = open_out(fs::path(o.out_dir) / (std::string("cog_hist_") + m + ".tsv"));
    write_cog_histogram(out, histogram(cogs, 0.0, wav.sample_rate / 2, 80, false));

    const auto& feats = std::string(m) == "traditional" ? res.features_traditional : res.features_chirp;
    try {
      const FeatureHistograms h = feature_histograms(feats);
      auto fo = open_out(fs::path(o.out_dir) / (std::string("feature_hist_") + m + ".tsv"));
      fo << "# feature\tbin_low\tmass\n";
      for (const auto& [name, bins] : {std::pair{"naq", &h.naq}, {"h1h2_db", &h.h1h2}, {"hrf_db", &h.hrf}})
        for (const auto& b : *bins) fo << name << '\t' << format_number(b.low) << '\t' << format_number(b.count) << '\n';
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::empty_output) throw;
      std::cerr << "note: " << m << ": " << e.what() << '\n';
    }
  }
  write_summary(std::cout, res.summary);
  return 0;
}

std::vector<double> parse_offsets(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      v.push_back(std::stod(tok));
    } catch (const std::exception&) {
      fail(ErrorKind::invalid_argument, "bad offset '" + tok + "'");
    }
  }
  if (v.empty()) fail(ErrorKind::invalid_argument, "offsets list is empty");
  return v;
}

int run_bench(const CommonOptions& o, const std::string& wav_path, const std::string& offsets) {
  const RunConfig cfg = o.config();
  if (o.gci_file.empty()) fail(ErrorKind::invalid_argument, "bench-robustness requires --gci-file");
  const std::vector<double> offs = parse_offsets(offsets);
  const WavData wav = read_wav(wav_path);
  const GciTrack gcis = read_gci_file(o.gci_file);
  std::optional<PitchTrack> pitch;
  if (!o.pitch_file.empty()) pitch = read_pitch_file(o.pitch_file);
  const auto rows = bench_robustness(wav.samples, wav.sample_rate, gcis,
                                     pitch ? &*pitch : nullptr, offs, cfg);
  fs::create_directories(o.out_dir);
  auto out = open_out(fs::path(o.out_dir) / "robustness.tsv");
  for (std::ostream* s : {static_cast<std::ostream*>(&out), static_cast<std::ostream*>(&std::cout)}) {
    *s << "offset_frac\trate_traditional\trate_chirp\n";
    for (const auto& r : rows)
      *s << format_number(r.offset_frac) << '\t' << format_number(r.rate_traditional) << '\t'
         << format_number(r.rate_chirp) << '\n';
  }
  return 0;
}

template <typename T>
T field(const nlohmann::json& j, const char* name, T fallback) {
  if (!j.contains(name)) return fallback;
  try {
    return j.at(name).get<T>();
  } catch (const std::exception& e) {
    fail(ErrorKind::parse_error, std::string("spec field '") + name + "': " + e.what());
  }
}

SyntheticSpec parse_synth_spec(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorKind::parse_error, "synth spec must be a JSON object");
  static const std::vector<std::string> known{"preset", "name", "f0", "f0_contour", "fs", "duration",
                                              "pulse", "formants", "jitter", "amplitude", "seed"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end())
      fail(ErrorKind::parse_error, "spec field '" + k + "': unknown field");
  SyntheticSpec s = j.contains("preset") ? preset(field<std::string>(j, "preset", "")) : SyntheticSpec{};
  s.f0 = field(j, "f0", s.f0);
  s.fs = field(j, "fs", s.fs);
  s.duration = field(j, "duration", s.duration);
  s.jitter = field(j, "jitter", s.jitter);
  s.amplitude = field(j, "amplitude", s.amplitude);
  s.seed = field<std::uint64_t>(j, "seed", s.seed);
  if (j.contains("f0_contour"))
    s.f0_contour = field<std::vector<std::pair<double, double>>>(j, "f0_contour", {});
  if (j.contains("pulse")) {
    const auto& p = j.at("pulse");
    if (!p.is_object()) fail(ErrorKind::parse_error, "spec field 'pulse': expected an object");
    s.pulse.rho = field(p, "rho", s.pulse.rho);
    s.pulse.theta = field(p, "theta", s.pulse.theta);
    if (p.contains("phase")) s.pulse.phase = field(p, "phase", 0.0);
  }
  if (j.contains("formants")) {
    s.formants.clear();
    for (const auto& [c, bw] : field<std::vector<std::pair<double, double>>>(j, "formants", {}))
      s.formants.push_back({c, bw});
  }
  if (!(s.fs > 0)) fail(ErrorKind::parse_error, "spec field 'fs': must be positive");
  if (!(s.f0 > 0)) fail(ErrorKind::parse_error, "spec field 'f0': must be positive");
  if (!(s.duration > 0)) fail(ErrorKind::parse_error, "spec field 'duration': must be positive");
  return s;
}

int run_synth(const CommonOptions& o, const std::string& spec_path, bool seed_given) {
  std::ifstream in(spec_path);
  if (!in) fail(ErrorKind::io_error, "cannot open " + spec_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    fail(ErrorKind::parse_error, spec_path + ": " + e.what());
  }
  SyntheticSpec spec = parse_synth_spec(j);
  if (seed_given) spec.seed = o.seed;
  const std::string name = field<std::string>(j, "name", "synth");
  const SyntheticUtterance u = synth_utterance(spec);

  fs::create_directories(o.out_dir);
  const fs::path base = fs::path(o.out_dir) / name;
  write_wav(base.string() + ".wav", u.signal, u.fs);
  write_gci_file(base.string() + ".gci", u.gcis);
  write_pitch_file(base.string() + ".pitch", u.pitch);
  auto out = open_out(base.string() + ".pulses");
  out.precision(9);
  for (const auto& p : u.pulses) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "\t" : "") << p[i];
    out << '\n';
  }
  std::cout << "wrote " << base.string() << ".{wav,gci,pitch,pulses}: " << u.gcis.instants.size()
            << " periods\n";
  return 0;
}

int run_radius_scan(const CommonOptions& o, const std::string& wav_path, double time, double t0_flag,
                    bool want_roots) {
  const RunConfig cfg = o.config();
  const WavData wav = read_wav(wav_path);
  double t0 = t0_flag;
  std::optional<GciTrack> gcis;
  if (!o.gci_file.empty()) gcis = read_gci_file(o.gci_file);
  if (!(t0 > 0)) {
    std::optional<double> v;
    if (!o.pitch_file.empty()) v = read_pitch_file(o.pitch_file).t0_at(time);
    else if (gcis) v = pitch_from_gcis(*gcis).t0_at(time);
    if (!v) fail(ErrorKind::invalid_argument, "radius-scan needs --t0, --pitch-file or --gci-file");
    t0 = *v;
  }
  const auto frame = extract_frame_async(wav.samples, wav.sample_rate, time, t0, cfg.window,
                                         gcis ? &*gcis : nullptr);
  if (!frame) fail(ErrorKind::invalid_argument, "frame at the requested time does not fit in the signal");
  const RadiusSearchResult r = find_optimal_radius(frame->samples, cfg.n_radii,
                                                   fft_size_for(cfg, frame->size()));

  fs::create_directories(o.out_dir);
  auto out = open_out(fs::path(o.out_dir) / "radius_scan.tsv");
  for (std::ostream* s : {static_cast<std::ostream*>(&out), static_cast<std::ostream*>(&std::cout)}) {
    *s << "# frame_length " << frame->size() << " center_time " << format_number(frame->center_time);
    if (frame->anchor_offset) *s << " anchor_offset " << *frame->anchor_offset;
    *s << '\n';
    *s << "# bounds " << format_number(r.bounds.first) << ' ' << format_number(r.bounds.second) << '\n';
    for (std::size_t p = 0; p < r.plateaus.size(); ++p) {
      const auto& pl = r.plateaus[p];
      *s << "# plateau " << format_number(r.radii[pl.start_idx]) << ' '
         << format_number(r.radii[pl.end_idx]) << " n_d " << pl.n_d << " length " << pl.length()
         << (p == r.best_plateau && !r.degenerate ? " optimal" : "") << '\n';
    }
    *s << "# optimal_radius " << format_number(r.optimal_radius)
       << (r.degenerate ? " degenerate" : "") << '\n';
    *s << "radius\tn_d\n";
    for (std::size_t i = 0; i < r.radii.size(); ++i)
      *s << format_number(r.radii[i]) << '\t' << r.n_d[i] << '\n';
  }
  if (want_roots) {
    if (frame->size() > kMaxOracleLength) {
      std::cerr << "note: frame too long for the root dump (" << frame->size() << " > "
                << kMaxOracleLength << ")\n";
    } else {
      try {
        const RootSet rs = compute_roots(frame->samples);
        auto ro = open_out(fs::path(o.out_dir) / "roots.tsv");
        ro << "modulus\tangle_rad\n";
        for (const auto& z : rs.roots)
          ro << format_number(std::abs(z)) << '\t' << format_number(std::arg(z)) << '\n';
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::oracle_unavailable) throw;
        std::cerr << "note: root dump skipped: " << e.what() << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Glottal source estimation by complex cepstrum decomposition"};
  app.require_subcommand(1);

  CommonOptions analyze_o, bench_o, synth_o, scan_o;
  std::string wav_path, spec_path, offsets = "-0.25,-0.1875,-0.125,-0.0625,0,0.0625,0.125,0.1875,0.25";
  double scan_time = 0.0, scan_t0 = 0.0;
  bool roots = false;

  auto* analyze = app.add_subcommand("analyze", "per-frame decomposition, quality and features");
  analyze->add_option("wav", wav_path, "16-bit PCM mono WAV")->required();
  add_common(analyze, analyze_o);

  auto* bench = app.add_subcommand("bench-robustness", "correct rate vs GCI offset");
  bench->add_option("wav", wav_path, "16-bit PCM mono WAV")->required();
  bench->add_option("--offsets", offsets, "comma-separated offsets as fractions of T0")->capture_default_str();
  add_common(bench, bench_o);

  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus from a JSON spec");
  synth->add_option("spec", spec_path, "JSON spec file")->required();
  add_common(synth, synth_o);

  auto* scan = app.add_subcommand("radius-scan", "n_d(R) over the radius grid for one frame");
  scan->add_option("wav", wav_path, "16-bit PCM mono WAV")->required();
  scan->add_option("--time", scan_time, "frame center (s)")->required();
  scan->add_option("--t0", scan_t0, "pitch period (s); otherwise from pitch or GCI file");
  scan->add_flag("--roots", roots, "also dump frame polynomial roots to roots.tsv");
  add_common(scan, scan_o);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*analyze) return run_analyze(analyze_o, wav_path);
    if (*bench) return run_bench(bench_o, wav_path, offsets);
    if (*synth) return run_synth(synth_o, spec_path, synth->count("--seed") > 0);
    if (*scan) return run_radius_scan(scan_o, wav_path, scan_time, scan_t0, roots);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
