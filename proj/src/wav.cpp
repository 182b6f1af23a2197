#include "glottal/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "glottal/error.hpp"

namespace glottal {

namespace {

std::uint32_t u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put32(std::ofstream& out, std::uint32_t v) {
  const char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff), char((v >> 24) & 0xff)};
  out.write(b, 4);
}

void put16(std::ofstream& out, std::uint16_t v) {
  const char b[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
  out.write(b, 2);
}

}  // namespace

WavData read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io_error, "cannot open " + path);
  const std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), {});
  auto bad = [&](const std::string& why) -> void { fail(ErrorKind::invalid_data, path + ": " + why); };
  if (buf.size() < 12 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
      std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
    bad("not a RIFF/WAVE file");

  WavData w;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const unsigned char* h = buf.data() + pos;
    const std::uint32_t size = u32(h + 4);
    const std::size_t body = pos + 8;
    if (body + size > buf.size()) bad("truncated chunk");
    if (std::memcmp(h, "fmt ", 4) == 0) {
      if (size < 16) bad("short fmt chunk");
      const unsigned char* f = buf.data() + body;
      if (u16(f) != 1) bad("unsupported encoding (audio_format " + std::to_string(u16(f)) + ", need PCM)");
      if (u16(f + 2) != 1) bad("unsupported channel count " + std::to_string(u16(f + 2)) + " (need mono)");
      if (u16(f + 14) != 16) bad("unsupported bits_per_sample " + std::to_string(u16(f + 14)) + " (need 16)");
      w.sample_rate = u32(f + 4);
      have_fmt = true;
    } else if (std::memcmp(h, "data", 4) == 0) {
      if (!have_fmt) bad("data chunk before fmt chunk");
      w.samples.resize(size / 2);
      for (std::size_t i = 0; i < w.samples.size(); ++i) {
        const auto v = static_cast<std::int16_t>(u16(buf.data() + body + 2 * i));
        w.samples[i] = static_cast<double>(v) / 32768.0;
      }
      return w;
    }
    pos = body + size + (size & 1);
  }
  bad("no data chunk");
  return w;
}

void write_wav(const std::string& path, const std::vector<double>& samples, double sample_rate) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io_error, "cannot write " + path);
  const auto bytes = static_cast<std::uint32_t>(samples.size() * 2);
  const auto fs = static_cast<std::uint32_t>(std::lround(sample_rate));
  out.write("RIFF", 4);
  put32(out, 36 + bytes);
  out.write("WAVEfmt ", 8);
  put32(out, 16);
  put16(out, 1);
  put16(out, 1);
  put32(out, fs);
  put32(out, fs * 2);
  put16(out, 2);
  put16(out, 16);
  out.write("data", 4);
  put32(out, bytes);
  for (double v : samples) {
    const long q = std::clamp(std::lround(v * 32768.0), -32768L, 32767L);
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
}

}  // namespace glottal
