#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace detcode {

enum class ErrorCode {
  NotPrime,
  DegreeZero,
  FieldTooLarge,
  DivisionByZero,
  FieldMismatch,
  IndexOutOfRange,
  EmptyVariety,
  BadParameters,
  BudgetExceeded,
  InternalFormulaMismatch,
  ShapeMismatch,
  NonIntegerDivision,
  NotRankOne,
  EquationViolated,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyVariety: return "EmptyVariety";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InternalFormulaMismatch: return "InternalFormulaMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonIntegerDivision: return "NonIntegerDivision";
    case ErrorCode::NotRankOne: return "NotRankOne";
    case ErrorCode::EquationViolated: return "EquationViolated";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// front ends can map them onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// True for errors caused by user-supplied parameters rather than budgets or bugs.
constexpr bool is_parameter_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::InternalFormulaMismatch:
    case ErrorCode::NonIntegerDivision:
      return false;
    default:
      return true;
  }
}

}  // namespace detcode
