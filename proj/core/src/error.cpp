#include "fermat/error.hpp"

namespace fermat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kNotPrime: return "not-prime";
    case ErrorCode::kModulusReducible: return "modulus-reducible";
    case ErrorCode::kNotPrimitive: return "not-primitive";
    case ErrorCode::kFieldTooLarge: return "field-too-large";
    case ErrorCode::kDivisionByZero: return "division-by-zero";
    case ErrorCode::kZeroElement: return "zero-element";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kContextMismatch: return "context-mismatch";
    case ErrorCode::kNotDivisor: return "d-not-divisor";
    case ErrorCode::kZeroArgument: return "zero-argument";
    case ErrorCode::kTooLarge: return "too-large";
    case ErrorCode::kNumericalFailure: return "numerical-failure";
    case ErrorCode::kTrivialFactorCharacter: return "trivial-factor-character";
    case ErrorCode::kZeroInput: return "zero-input";
    case ErrorCode::kOrderMismatch: return "order-mismatch";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kPDividesD: return "p-divides-d";
    case ErrorCode::kNonIntegralResult: return "non-integral-result";
    case ErrorCode::kTooManyVariables: return "too-many-variables";
    case ErrorCode::kSTooSmall: return "s-too-small";
    case ErrorCode::kNotAdmissible: return "not-admissible";
    case ErrorCode::kNoCommonR: return "no-common-r";
    case ErrorCode::kParityViolation: return "parity-violation";
    case ErrorCode::kInvalidSpec: return "invalid-spec";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace fermat
