#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bellscope {

enum class ErrorCode {
  invalid_scenario,
  invalid_pair,
  invalid_vector,
  cap_exceeded,
  mode_mismatch,
  non_binary,
  not_independence_vector,
  outside_polytope,
  unsupported_scenario,
  not_convex,
  reconstruction_mismatch,
  inadmissible,
  lp_infeasible,
  zero_probability,
  not_a_partition,
  signaling_rejected,
  coefficient_mismatch,
  non_deterministic,
  screening_failed,
  dimension_mismatch,
  out_of_range,
  not_unit,
  not_density_operator,
  not_projection,
  norm_violation,
  commutation_violation,
  parse_error,
  internal,
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

}  // namespace bellscope
