// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: acceptance <path-to-glottal-cli> <scratch-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "glottal/chirp.hpp"
#include "glottal/decomposition.hpp"
#include "glottal/features.hpp"
#include "glottal/fft.hpp"
#include "glottal/quality.hpp"
#include "glottal/spectral.hpp"
#include "glottal/zzt.hpp"
#include "oracles.hpp"

using namespace glottal;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<double> random_frame(std::mt19937_64& rng, std::size_t L) {
  std::normal_distribution<double> g;
  std::vector<double> x(L);
  for (auto& v : x) v = g(rng);
  x[0] += 3.0;  // keeps the DC term away from zero
  return x;
}

Outcome cepstrum_identities() {
  std::mt19937_64 rng(101);
  double worst_rt = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t L = 8 + rng() % 300;
    const auto x = random_frame(rng, L);
    const auto c = complex_cepstrum(x, default_fft_size(L));
    const auto y = inverse_complex_cepstrum(c, CepstralSide::All);
    std::vector<double> back(L);
    for (std::size_t n = 0; n < L; ++n) back[n] = c.gain_sign * y.at(static_cast<long>(n) + c.circular_delay);
    worst_rt = std::max(worst_rt, oracle::rel_err(back, x));
  }
  double worst_series = 0;
  for (double a : {0.5, 0.9}) {
    const auto c = complex_cepstrum(std::vector<double>{1.0, -a}, 4096);
    for (long n = 1; n < 200; ++n)
      worst_series = std::max(worst_series, std::abs(c(n) + std::pow(a, n) / static_cast<double>(n)));
    for (long n = -200; n < 0; ++n) worst_series = std::max(worst_series, std::abs(c(n)));
  }
  double worst_leak = 0;
  for (int t = 0; t < 100; ++t) {
    const auto x = oracle::poly_from_roots(oracle::random_roots(rng, 2 + rng() % 60, 0.05, 0.95));
    const std::size_t N = default_fft_size(x.size());
    const auto c = complex_cepstrum(x, N);
    double all = 0, neg = 0;
    for (long n = -static_cast<long>(N) / 2; n < static_cast<long>(N) / 2; ++n) {
      all = std::max(all, std::abs(c(n)));
      if (n < 0) neg = std::max(neg, std::abs(c(n)));
    }
    worst_leak = std::max(worst_leak, neg / all);
  }
  return {worst_rt <= 1e-6 && worst_series <= 1e-6 && worst_leak <= 1e-4,
          "round trip " + fmt("%.2e", worst_rt) + ", series " + fmt("%.2e", worst_series) +
              ", leakage " + fmt("%.2e", worst_leak)};
}

Outcome czt_equivalence() {
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> rad(0.8, 1.2);
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    const auto x = random_frame(rng, 8 + rng() % 160);
    const std::size_t N = next_power_of_two(2 * x.size());
    for (int r = 0; r < 10; ++r) {
      const double R = rad(rng);
      const auto X = fft::forward_real(chirp_modulate(x, R), N);
      const auto ref = oracle::czt_circle(x, R, N);
      double err = 0, peak = 0;
      for (std::size_t k = 0; k < N; ++k) {
        err = std::max(err, std::abs(X[k] - ref[k]));
        peak = std::max(peak, std::abs(ref[k]));
      }
      worst = std::max(worst, err / peak);
    }
  }
  return {worst <= 1e-10, "worst relative error " + fmt("%.2e", worst)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  std::size_t frames = 0, over = 0, nd_checked = 0, nd_match = 0;
  while (frames < 500) {
    const std::size_t L = 2 + rng() % 31;
    const double R = 0.9 + 0.2 * u(rng);
    std::vector<oracle::cplx> roots;
    while (roots.size() + 1 < L) {
      const bool out = u(rng) < 0.5;
      const double m = out ? R + 0.05 + 0.5 * u(rng) : (R - 0.05) * (0.2 + 0.8 * u(rng));
      const auto z = std::polar(m, 0.05 + 3.0 * u(rng));
      roots.push_back(z);
      if (roots.size() + 1 < L) roots.push_back(std::conj(z));
      else roots.back() = m;
    }
    const auto x = oracle::poly_from_roots(roots);
    const auto z = zzt_decompose(x, R);
    const auto c = decompose_at_radius(x, R, 8 * default_fft_size(x.size()), 16000);
    const double e = std::max(normalized_rms_difference(z.anticausal, c.anticausal),
                              normalized_rms_difference(z.causal, c.causal));
    worst = std::max(worst, e);
    if (e > 1e-5) ++over;
    ++frames;

    // n_d difference between two radii against the root count between them
    const auto rs = compute_roots(x);
    const double r1 = 0.7 + 0.6 * u(rng), r2 = r1 + 0.3 * u(rng);
    bool near = false;
    for (const auto& r : rs.roots)
      near = near || std::abs(std::abs(r) - r1) < 0.01 || std::abs(std::abs(r) - r2) < 0.01;
    bool lc1 = false, lc2 = false;
    const long n1 = circular_delay(x, r1, 2048, &lc1), n2 = circular_delay(x, r2, 2048, &lc2);
    if (near || lc1 || lc2) continue;
    ++nd_checked;
    if (static_cast<std::size_t>(std::labs(n1 - n2)) == count_roots_in_annulus(rs, r1, r2)) ++nd_match;
  }
  return {worst <= 1e-5 && nd_match == nd_checked,
          "component NRMS " + fmt("%.2e", worst) + " (" + std::to_string(over) + "/" +
              std::to_string(frames) + " frames over 1e-5), n_d jumps " + std::to_string(nd_match) + "/" +
              std::to_string(nd_checked)};
}

Outcome bounds_formula() {
  bool ok = true;
  for (std::size_t L : {80u, 160u, 320u}) {
    const auto b = radius_bounds(L);
    const double e = 50 * std::numbers::pi / (17.0 * static_cast<double>(L));
    ok = ok && std::abs(b.first - std::exp(-e)) <= 1e-15 && std::abs(b.second - std::exp(e)) <= 1e-15;
  }
  const auto b = radius_bounds(160);
  ok = ok && std::abs(b.first - 0.9439) < 5e-5 && std::abs(b.second - 1.0594) < 5e-5;
  return {ok, "L=160 -> (" + fmt("%.4f", b.first) + ", " + fmt("%.4f", b.second) + ")"};
}

const std::vector<double> kOffsets{-0.25, -0.1875, -0.125, -0.0625, 0, 0.0625, 0.125, 0.1875, 0.25};

Outcome robustness_shape() {
  const auto us = corpus::utterances("modal", {100.0, 200.0}, 2.0);
  std::vector<double> rt, rc;
  std::size_t min_frames = SIZE_MAX;
  for (double off : kOffsets) {
    std::vector<QualityLabel> lt, lc;
    for (const auto& u : us)
      for (const auto& c : corpus::frames_at(u, off)) {
        const auto t = decompose_traditional(c.frame);
        const auto h = decompose_chirp(c.frame);
        lt.push_back(classify_decomposition(anticausal_cog(t.anticausal, c.t0, c.frame.sample_rate)));
        lc.push_back(classify_decomposition(anticausal_cog(h.anticausal, c.t0, c.frame.sample_rate)));
      }
    min_frames = std::min(min_frames, lt.size());
    rt.push_back(correct_rate(lt));
    rc.push_back(correct_rate(lc));
  }
  const std::size_t mid = 4, last = kOffsets.size() - 1;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < rt.size(); ++i)
    if (rt[i] > rt[peak]) peak = i;
  bool unimodal = true;
  for (std::size_t i = 1; i <= peak; ++i) unimodal = unimodal && rt[i] >= rt[i - 1];
  for (std::size_t i = peak + 1; i < rt.size(); ++i) unimodal = unimodal && rt[i] <= rt[i - 1];
  const bool peak_ok = rt[mid] >= 0.95 && rt[mid] >= rt[peak];
  const bool edges_ok = rt[0] <= 0.5 && rt[last] <= 0.5;
  const bool chirp_ok = *std::min_element(rc.begin(), rc.end()) >= 0.85;
  const bool center_ok = std::abs(rc[mid] - rt[mid]) <= 0.05;
  std::string d = "frames/offset >= " + std::to_string(min_frames) + "; trad";
  for (double v : rt) d += " " + fmt("%.2f", v);
  d += "; chirp";
  for (double v : rc) d += " " + fmt("%.2f", v);
  d += std::string("; unimodal ") + (unimodal ? "y" : "n") + " peak@0 " + (peak_ok ? "y" : "n") +
       " edges<=0.5 " + (edges_ok ? "y" : "n") + " chirp>=0.85 " + (chirp_ok ? "y" : "n") +
       " |chirp-trad|@0<=0.05 " + (center_ok ? "y" : "n");
  return {min_frames >= 500 && unimodal && peak_ok && edges_ok && chirp_ok && center_ok, d};
}

Outcome feature_reproduction() {
  std::vector<double> med_t, med_c;
  double worst_l1 = 0;
  std::string d;
  for (const char* name : {"tense", "modal", "lax"}) {
    std::vector<GlottalFeatures> ft, fc;
    for (const auto& u : corpus::utterances(name, {100.0, 200.0}, 1.0))
      for (const auto& c : corpus::frames_at(u, 0.0)) {
        for (bool chirp : {false, true}) {
          const auto m = chirp ? decompose_chirp(c.frame) : decompose_traditional(c.frame);
          auto f = extract_features(m.anticausal, c.t0, c.frame.sample_rate);
          f.quality = classify_decomposition(anticausal_cog(m.anticausal, c.t0, c.frame.sample_rate));
          (chirp ? fc : ft).push_back(f);
        }
      }
    auto naqs = [](const std::vector<GlottalFeatures>& v) {
      std::vector<double> out;
      for (const auto& f : v)
        if (f.quality.correct && f.naq) out.push_back(*f.naq);
      return out;
    };
    med_t.push_back(corpus::median(naqs(ft)));
    med_c.push_back(corpus::median(naqs(fc)));
    const auto ht = feature_histograms(ft), hc = feature_histograms(fc);
    const double l1 = std::max({histogram_l1(ht.naq, hc.naq), histogram_l1(ht.h1h2, hc.h1h2),
                                histogram_l1(ht.hrf, hc.hrf)});
    worst_l1 = std::max(worst_l1, l1);
    d += std::string(name) + " NAQ " + fmt("%.3f", med_t.back()) + "/" + fmt("%.3f", med_c.back()) + "; ";
  }
  const bool ordered = med_t[0] < med_t[1] && med_t[1] < med_t[2] && med_c[0] < med_c[1] &&
                       med_c[1] < med_c[2];
  d += "max L1 " + fmt("%.3f", worst_l1);
  return {ordered && worst_l1 <= 0.15, d};
}

Outcome cog_bimodality() {
  std::vector<double> cogs;
  std::size_t agree = 0, total = 0, truth_bad = 0;
  for (const auto& u : corpus::utterances("modal", {100.0, 200.0}, 2.0))
    for (double off : {0.0, -0.25, 0.25})
      for (const auto& c : corpus::frames_at(u, off)) {
        const auto t = decompose_traditional(c.frame);
        const double cog = anticausal_cog(t.anticausal, c.t0, c.frame.sample_rate);
        cogs.push_back(cog);
        const bool truth = corpus::pulse_nrms(t, c) <= 0.2;
        if (!truth) ++truth_bad;
        if (classify_decomposition(cog).correct == truth) ++agree;
        ++total;
      }
  const auto h = histogram(cogs, 0.0, 8000.0, 40, false);  // 200 Hz bins
  std::size_t valley = 12;                                 // bins 12..14 span [2400, 3000)
  for (std::size_t i = 12; i <= 14; ++i)
    if (h[i].count < h[valley].count) valley = i;
  double low = 0, high = 0;
  for (std::size_t i = 0; i < valley; ++i) low = std::max(low, h[i].count);
  for (std::size_t i = valley + 1; i < h.size(); ++i) high = std::max(high, h[i].count);
  const double v = h[valley].count;
  const bool bimodal = low > v && high > v && v < 0.5 * std::min(low, high);
  const double rate = static_cast<double>(agree) / static_cast<double>(total);
  return {bimodal && rate >= 0.9,
          std::to_string(total) + " frames, " + std::to_string(truth_bad) +
              " with pulse NRMS > 0.2; modes " + fmt("%.0f", low) + "/" + fmt("%.0f", high) +
              " valley " + fmt("%.0f", v) + " at " + fmt("%.0f", h[valley].low) +
              " Hz; agreement " + fmt("%.3f", rate)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli, const fs::path& dir) {
  fs::create_directories(dir);
  {
    std::ofstream spec(dir / "spec.json");
    spec << R"({"preset": "modal", "name": "det", "duration": 1.0, "seed": 5})";
  }
  auto run = [&](const std::string& args) {
    return std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
  };
  if (run("synth " + (dir / "spec.json").string() + " --out-dir " + dir.string()) != 0)
    return {false, "synth failed"};
  std::string csv[3];
  const char* threads[3] = {"4", "4", "1"};
  for (int i = 0; i < 3; ++i) {
    const auto out = dir / ("run" + std::to_string(i));
    fs::create_directories(out);
    const std::string args = "analyze " + (dir / "det.wav").string() + " --gci-file " +
                             (dir / "det.gci").string() + " --method both --threads " + threads[i] +
                             " --out-dir " + out.string();
    if (run(args) != 0) return {false, "analyze failed"};
    csv[i] = slurp(out / "frames.csv");
  }
  const bool same = !csv[0].empty() && csv[0] == csv[1] && csv[1] == csv[2];
  return {same, std::to_string(csv[0].size()) + " bytes, 4-thread runs and 1-thread run " +
                    (same ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <glottal-cli> <scratch-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path dir = argv[2];
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "cepstrum identities", 10, cepstrum_identities},
      {2, "CZT equivalence", 30, czt_equivalence},
      {3, "root-split oracle equivalence", 120, oracle_equivalence},
      {4, "radius bounds formula", 1e9, bounds_formula},
      {5, "robustness curve shape", 300, robustness_shape},
      {6, "feature distributions", 300, feature_reproduction},
      {7, "COG bimodality and agreement", 300, cog_bimodality},
      {8, "determinism", 1e9, [&] { return determinism(cli, dir); }},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs <= c.budget_s;
    if (!pass) ++failed;
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << ": " << c.name << " ("
              << o.detail << "; " << fmt("%.1f", secs) << " s)" << std::endl;
  }
  return failed ? 1 : 0;
}
