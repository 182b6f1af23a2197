#include "glottal/table_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "glottal/error.hpp"

namespace glottal {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> f;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) f.push_back(cur);
  if (!line.empty() && line.back() == ',') f.push_back("");
  return f;
}

double num(const std::string& s, long lineno, const char* field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::parse_error,
       "line " + std::to_string(lineno) + ": bad value '" + s + "' for " + field);
}

std::optional<double> optnum(const std::string& s, long lineno, const char* field) {
  if (s.empty()) return std::nullopt;
  return num(s, lineno, field);
}

}  // namespace

void write_frame_csv(std::ostream& out, const std::vector<FrameRecord>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.frame_id << ',' << format_number(r.time_s) << ',' << r.method << ','
        << format_number(r.radius_used) << ',' << r.n_d << ',' << format_number(r.cog_hz) << ','
        << (r.correct ? 1 : 0) << ',' << opt(r.naq) << ',' << opt(r.h1h2_db) << ','
        << opt(r.hrf_db) << '\n';
  }
}

std::vector<FrameRecord> read_frame_csv(std::istream& in) {
  std::vector<FrameRecord> rows;
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line) || line != kCsvHeader)
    fail(ErrorKind::parse_error, "line 1: missing or unexpected CSV header");
  ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 10)
      fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": expected 10 fields");
    FrameRecord r;
    r.frame_id = static_cast<long>(num(f[0], lineno, "frame_id"));
    r.time_s = num(f[1], lineno, "time_s");
    r.method = f[2];
    if (r.method != "traditional" && r.method != "chirp")
      fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": unknown method " + r.method);
    r.radius_used = num(f[3], lineno, "radius_used");
    r.n_d = static_cast<long>(num(f[4], lineno, "n_d"));
    r.cog_hz = num(f[5], lineno, "cog_hz");
    if (f[6] != "0" && f[6] != "1")
      fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": correct must be 0 or 1");
    r.correct = f[6] == "1";
    r.naq = optnum(f[7], lineno, "naq");
    r.h1h2_db = optnum(f[8], lineno, "h1h2_db");
    r.hrf_db = optnum(f[9], lineno, "hrf_db");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace glottal
