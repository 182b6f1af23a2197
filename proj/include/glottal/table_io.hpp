#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace glottal {

struct FrameRecord {
  long frame_id = 0;
  double time_s = 0.0;
  std::string method;  // "traditional" or "chirp"
  double radius_used = 1.0;
  long n_d = 0;
  double cog_hz = 0.0;
  bool correct = false;
  std::optional<double> naq;
  std::optional<double> h1h2_db;
  std::optional<double> hrf_db;
};

inline constexpr const char* kCsvHeader =
    "frame_id,time_s,method,radius_used,n_d,cog_hz,correct,naq,h1h2_db,hrf_db";

// Six significant digits, shortest form.
std::string format_number(double v);

// Header plus one row per record; unavailable features are empty fields.
void write_frame_csv(std::ostream& out, const std::vector<FrameRecord>& rows);
std::vector<FrameRecord> read_frame_csv(std::istream& in);

}  // namespace glottal
