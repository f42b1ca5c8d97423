#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cloneforge {

enum class ErrorCode {
  LengthMismatch,
  ValueOutOfRange,
  BadArity,
  BadIndex,
  ArityMismatch,
  DomainMismatch,
  BadMap,
  DomainTooLarge,
  BadParams,
  CapExceeded,
  EmptySet,
  PreconditionFailed,
  IncompleteList,
  NotMinorsTrivial,
  SwierczkowskiViolation,
  NotMinority,
  NotConservative,
  WrongShape,
  WrongType,
  Idempotent,
  Inconclusive,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cloneforge
