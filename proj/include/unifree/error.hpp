#pragma once

#include <stdexcept>
#include <string>

namespace unifree {

enum class ErrorCode {
  ElementNotInMonoid,
  EmptyCarrier,
  BoundExceeded,
  MalformedTemplate,
  MalformedInput,
  NoFixedPoint,
  NotEnoughNaturalComponents,
  IndexOutOfDomain,
  NotInUnitBall,
  NotNonExpansive,
  SquareDoesNotCommuteAtSetLevel,
  PreconditionViolated,
  DoesNotGenerate,
  UsageError,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the core carries one of the codes above; the C API
// maps them onto status values without inspecting messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace unifree
