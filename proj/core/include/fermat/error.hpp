#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fermat {

enum class ErrorCode {
  kInvalidArgument,
  kNotPrime,
  kModulusReducible,
  kNotPrimitive,
  kFieldTooLarge,
  kDivisionByZero,
  kZeroElement,
  kOutOfRange,
  kContextMismatch,
  kNotDivisor,
  kZeroArgument,
  kTooLarge,
  kNumericalFailure,
  kTrivialFactorCharacter,
  kZeroInput,
  kOrderMismatch,
  kUnsupported,
  kPDividesD,
  kNonIntegralResult,
  kTooManyVariables,
  kSTooSmall,
  kNotAdmissible,
  kNoCommonR,
  kParityViolation,
  kInvalidSpec,
};

/// Stable kebab-case name, used in CLI error output.
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace fermat
