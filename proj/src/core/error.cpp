#include "unifree/error.hpp"

namespace unifree {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ElementNotInMonoid: return "ElementNotInMonoid";
    case ErrorCode::EmptyCarrier: return "EmptyCarrier";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::MalformedTemplate: return "MalformedTemplate";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::NoFixedPoint: return "NoFixedPoint";
    case ErrorCode::NotEnoughNaturalComponents: return "NotEnoughNaturalComponents";
    case ErrorCode::IndexOutOfDomain: return "IndexOutOfDomain";
    case ErrorCode::NotInUnitBall: return "NotInUnitBall";
    case ErrorCode::NotNonExpansive: return "NotNonExpansive";
    case ErrorCode::SquareDoesNotCommuteAtSetLevel: return "SquareDoesNotCommuteAtSetLevel";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DoesNotGenerate: return "DoesNotGenerate";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace unifree
