#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chebcenter {

enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  ZeroFunctional,
  Infeasible,
  Unbounded,
  OracleValue,
  EmptyDomain,
  PreconditionRadius,
  NotEmpty,
  NotDisjoint,
  SeparationTooThin,
  LoopInvariantViolated,
  BudgetExceeded,
  Schema,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI) can map it without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroFunctional: return "ZeroFunctional";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::OracleValue: return "OracleValue";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::PreconditionRadius: return "PreconditionRadius";
    case ErrorCode::NotEmpty: return "NotEmpty";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::SeparationTooThin: return "SeparationTooThin";
    case ErrorCode::LoopInvariantViolated: return "LoopInvariantViolated";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace chebcenter
