#include "fredholm/error.hpp"

namespace fredholm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ToleranceConflict: return "ToleranceConflict";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SingularFundamental: return "SingularFundamental";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::IntegerOrder: return "IntegerOrder";
    case ErrorCode::MissingDerivatives: return "MissingDerivatives";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NoApplicableOracle: return "NoApplicableOracle";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidOrder:
    case ErrorCode::InvalidSpace:
    case ErrorCode::EmptyInterval:
    case ErrorCode::OutOfDomain:
    case ErrorCode::InvalidConfig:
    case ErrorCode::ToleranceConflict:
    case ErrorCode::IoError:
      return 2;
    case ErrorCode::SingularFundamental:
    case ErrorCode::NonFiniteValue:
    case ErrorCode::UnsupportedOrder:
    case ErrorCode::IntegerOrder:
    case ErrorCode::MissingDerivatives:
    case ErrorCode::NoSolution:
    case ErrorCode::NoApplicableOracle:
      return 3;
  }
  return 3;
}

}  // namespace fredholm
