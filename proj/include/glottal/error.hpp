#pragma once

#include <stdexcept>
#include <string>

namespace glottal {

enum class ErrorKind {
  invalid_argument,
  invalid_data,
  feature_unavailable,
  oracle_unavailable,
  boundary_degenerate,
  empty_output,
  parse_error,
  io_error,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (tests, the
// batch front-end) can tell a rejected frame from a broken input file.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace glottal
