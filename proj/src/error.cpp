#include "tnn/error.hpp"

namespace tnn {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::QuasiUniformityViolated: return "QuasiUniformityViolated";
    case ErrorCode::JitterTooLarge: return "JitterTooLarge";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::InsufficientDerivatives: return "InsufficientDerivatives";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::TooFewNodes: return "TooFewNodes";
    case ErrorCode::NoAdmissibleStep: return "NoAdmissibleStep";
    case ErrorCode::SlopeUndefined: return "SlopeUndefined";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

}  // namespace tnn
