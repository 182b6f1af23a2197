#include <doctest.h>

#include "corpus.hpp"
#include "glottal/chirp.hpp"
#include "glottal/features.hpp"
#include "glottal/pipeline.hpp"
#include "glottal/quality.hpp"

using namespace glottal;

namespace {

double cog_of(const MixedPhaseDecomposition& d, const corpus::Frame& c) {
  return anticausal_cog(d.anticausal, c.t0, c.frame.sample_rate);
}

const auto& modal_corpus() {
  static const auto us = corpus::utterances("modal", {100.0, 200.0}, 1.0);
  return us;
}

}  // namespace

TEST_CASE("clean GCI-centered frames decompose correctly") {
  std::vector<QualityLabel> labels;
  for (const auto& u : modal_corpus())
    for (const auto& c : corpus::frames_at(u, 0.0))
      labels.push_back(classify_decomposition(cog_of(decompose_traditional(c.frame), c)));
  CHECK(labels.size() >= 250);
  CHECK(correct_rate(labels) >= 0.95);
}

TEST_CASE("COG separates correct and failed traditional decompositions") {
  std::size_t low = 0, n0 = 0, high = 0, n4 = 0;
  for (const auto& u : modal_corpus()) {
    for (const auto& c : corpus::frames_at(u, 0.0)) {
      ++n0;
      if (cog_of(decompose_traditional(c.frame), c) < kDefaultCogThreshold) ++low;
    }
    for (const auto& c : corpus::frames_at(u, 0.25)) {
      ++n4;
      if (cog_of(decompose_traditional(c.frame), c) > kDefaultCogThreshold) ++high;
    }
  }
  CHECK(2 * low > n0);
  CHECK(2 * high > n4);
}

TEST_CASE("chirp decomposition rescues frames a fifth of a period off the GCI") {
  std::size_t rescued = 0, total = 0;
  for (const auto& u : modal_corpus())
    for (const auto& c : corpus::frames_at(u, 0.2)) {
      ++total;
      const bool t = cog_of(decompose_traditional(c.frame), c) < kDefaultCogThreshold;
      const bool h = cog_of(decompose_chirp(c.frame), c) < kDefaultCogThreshold;
      if (h && !t) ++rescued;
    }
  REQUIRE(total > 0);
  CHECK(static_cast<double>(rescued) / static_cast<double>(total) >= 0.6);
}

TEST_CASE("robustness bench: centered and quarter-period offsets") {
  const auto& u = modal_corpus()[1];
  RunConfig cfg;
  cfg.threads = 1;
  const std::vector<double> offsets{0.0, 0.25};
  const auto rows = bench_robustness(u.signal, u.fs, u.gcis, &u.pitch, offsets, cfg);
  CHECK(rows[0].rate_traditional >= rows[0].rate_chirp - 0.05);
  CHECK(rows[1].rate_chirp - rows[1].rate_traditional >= 0.3);
}

TEST_CASE("radius scan: an offset frame moves the optimum off the unit circle") {
  std::size_t moved = 0, total = 0;
  for (const auto& c : corpus::frames_at(modal_corpus()[1], 0.25)) {
    const auto r = find_optimal_radius(c.frame.samples);
    ++total;
    if (r.optimal_radius != 1.0 && r.optimal_radius >= r.bounds.first &&
        r.optimal_radius <= r.bounds.second)
      ++moved;
  }
  REQUIRE(total > 0);
  CHECK(2 * moved > total);
}

TEST_CASE("NAQ orders tense below lax") {
  std::vector<double> med;
  for (const char* name : {"tense", "lax"}) {
    std::vector<double> v;
    for (const auto& u : corpus::utterances(name, {200.0}, 0.5))
      for (const auto& c : corpus::frames_at(u, 0.0)) {
        const auto f = extract_features(decompose_traditional(c.frame).anticausal, c.t0, c.frame.sample_rate);
        if (f.naq) v.push_back(*f.naq);
      }
    med.push_back(corpus::median(v));
  }
  CHECK(med[0] < med[1]);
}
