#include "glottal/error.hpp"

namespace glottal {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_data: return "invalid-data";
    case ErrorKind::feature_unavailable: return "feature-unavailable";
    case ErrorKind::oracle_unavailable: return "oracle-unavailable";
    case ErrorKind::boundary_degenerate: return "boundary-degenerate";
    case ErrorKind::empty_output: return "empty-output";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace glottal
