#pragma once

#include <string>
#include <vector>

namespace glottal {

struct WavData {
  std::vector<double> samples;  // in [-1, 1)
  double sample_rate = 0.0;
};

// 16-bit PCM mono only; anything else is rejected with a message naming the
// offending field.
WavData read_wav(const std::string& path);
void write_wav(const std::string& path, const std::vector<double>& samples, double sample_rate);

}  // namespace glottal
