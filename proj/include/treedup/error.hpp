#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace treedup {

enum class ErrorCode {
  duplicate_value,
  not_comparable,
  out_of_interval,
  not_in_both,
  equal_points,
  empty_set,
  not_a_cover,
  projection_mismatch,
  no_valid_theta,
  round_budget_exceeded,
  zero_function,
  zero_at_point,
  unknown_suite,
  config_invalid,
  parse_error,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace treedup
