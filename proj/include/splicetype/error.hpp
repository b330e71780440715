#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splicetype {

enum class ErrorCode {
  // input / precondition failures
  SyntaxError,
  NotATree,
  DuplicateVertex,
  UnknownEndpoint,
  UnknownVertex,
  NotZHS,
  NotUnimodular,
  NotNegativeDefinite,
  NotCoprime,
  NotBlowdownable,
  NotAbsorbable,
  InvalidAttachment,
  FewerThanTwoNodes,
  UnknownVariable,
  NotANode,
  NotABranch,
  MonomialConditionFailed,
  DegenerateMinors,
  NotMonicUnit,
  InputTooLarge,
  InvalidArgument,
  AssumptionRejected,
  // internal invariant violations
  NoPolynomialFit,
  NonPolynomialQuotient,
  ExponentNotDivisible,
  InvariantViolation,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NotZHS: return "NotZHS";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NotNegativeDefinite: return "NotNegativeDefinite";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotBlowdownable: return "NotBlowdownable";
    case ErrorCode::NotAbsorbable: return "NotAbsorbable";
    case ErrorCode::InvalidAttachment: return "InvalidAttachment";
    case ErrorCode::FewerThanTwoNodes: return "FewerThanTwoNodes";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NotANode: return "NotANode";
    case ErrorCode::NotABranch: return "NotABranch";
    case ErrorCode::MonomialConditionFailed: return "MonomialConditionFailed";
    case ErrorCode::DegenerateMinors: return "DegenerateMinors";
    case ErrorCode::NotMonicUnit: return "NotMonicUnit";
    case ErrorCode::InputTooLarge: return "InputTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AssumptionRejected: return "AssumptionRejected";
    case ErrorCode::NoPolynomialFit: return "NoPolynomialFit";
    case ErrorCode::NonPolynomialQuotient: return "NonPolynomialQuotient";
    case ErrorCode::ExponentNotDivisible: return "ExponentNotDivisible";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

// Codes that signal a bug in this library rather than a bad input.
constexpr bool is_internal(ErrorCode code) {
  return code == ErrorCode::NoPolynomialFit || code == ErrorCode::NonPolynomialQuotient ||
         code == ErrorCode::ExponentNotDivisible || code == ErrorCode::InvariantViolation;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Throws InvariantViolation when cond is false.
inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvariantViolation, what);
}

}  // namespace splicetype
