#pragma once

#include <stdexcept>
#include <string>

namespace mdtn {

enum class ErrorCode {
  AmbiguousBranch,
  ZeroConstantTerm,
  OrderUnderflow,
  Singular,
  InvalidInput,
  FocalDegeneracy,
  RealFrequency,
  ZeroFrequencyCovector,
  DegenerateRho,
  OutsideRetainedRegion,
  OrderBudgetExceeded,
  InteriorResonance,
  ContourThroughZero,
  CoincidentMedia,
  ConfigError,
};

/// Module-qualified name, e.g. "numerics.AmbiguousBranch".
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mdtn
