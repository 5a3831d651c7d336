#include "wtg/error.hpp"

namespace wtg {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::empty_sample: return "empty_sample";
    case ErrorCode::value_outside_support: return "value_outside_support";
    case ErrorCode::grid_mismatch: return "grid_mismatch";
    case ErrorCode::out_of_support: return "out_of_support";
    case ErrorCode::invalid_increment: return "invalid_increment";
    case ErrorCode::degenerate_window: return "degenerate_window";
    case ErrorCode::no_admissible_bandwidth: return "no_admissible_bandwidth";
    case ErrorCode::time_out_of_range: return "time_out_of_range";
    case ErrorCode::length_mismatch: return "length_mismatch";
    case ErrorCode::invalid_probability: return "invalid_probability";
    case ErrorCode::numerical_overflow: return "numerical_overflow";
    case ErrorCode::zero_frequency: return "zero_frequency";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::empty_group: return "empty_group";
    case ErrorCode::all_zero_counts: return "all_zero_counts";
    case ErrorCode::bandwidth_too_small: return "bandwidth_too_small";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& operation, const std::string& detail) {
  throw Error(code, operation + ": " + detail);
}

}  // namespace wtg
