#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tnn {

enum class ErrorCode {
  InvalidParameter,
  NotStrictlyIncreasing,
  EndpointMismatch,
  QuasiUniformityViolated,
  JitterTooLarge,
  UnknownTarget,
  InsufficientDerivatives,
  OutOfDomain,
  TooFewNodes,
  NoAdmissibleStep,
  SlopeUndefined,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failure
/// and `what()` carries the detail, prefixed by the error name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tnn
