#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fredholm {

enum class ErrorCode {
  SyntaxError,
  DimensionMismatch,
  InvalidOrder,
  InvalidSpace,
  EmptyInterval,
  OutOfDomain,
  InvalidConfig,
  ToleranceConflict,
  IoError,
  SingularFundamental,
  NonFiniteValue,
  UnsupportedOrder,
  IntegerOrder,
  MissingDerivatives,
  NoSolution,
  NoApplicableOracle,
};

inline constexpr ErrorCode kAllErrorCodes[] = {
    ErrorCode::SyntaxError,         ErrorCode::DimensionMismatch,
    ErrorCode::InvalidOrder,        ErrorCode::InvalidSpace,
    ErrorCode::EmptyInterval,       ErrorCode::OutOfDomain,
    ErrorCode::InvalidConfig,       ErrorCode::ToleranceConflict,
    ErrorCode::IoError,             ErrorCode::SingularFundamental,
    ErrorCode::NonFiniteValue,      ErrorCode::UnsupportedOrder,
    ErrorCode::IntegerOrder,        ErrorCode::MissingDerivatives,
    ErrorCode::NoSolution,          ErrorCode::NoApplicableOracle,
};

std::string_view to_string(ErrorCode code);

/// CLI exit code for an error: 2 for rejected input or configuration,
/// 3 for failures during the numerical analysis.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fredholm
