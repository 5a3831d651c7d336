#pragma once

#include <stdexcept>
#include <string>

namespace wtg {

enum class ErrorCode {
  invalid_argument,
  empty_sample,
  value_outside_support,
  grid_mismatch,
  out_of_support,
  invalid_increment,
  degenerate_window,
  no_admissible_bandwidth,
  time_out_of_range,
  length_mismatch,
  invalid_probability,
  numerical_overflow,
  zero_frequency,
  parse_error,
  empty_group,
  all_zero_counts,
  bandwidth_too_small,
  io_error,
};

const char* to_string(ErrorCode code);

/// Library-wide exception. Messages name the operation that failed so the
/// CLI can report "error in <operation>: <detail>" and exit nonzero.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& operation,
                       const std::string& detail);

}  // namespace wtg
