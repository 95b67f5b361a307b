#pragma once

#include <stdexcept>
#include <string>

namespace celllab {

// Machine-readable failure categories.  The code names are stable API:
// tests and the CLI match on them.
enum class ErrorCode {
  InfiniteGroup,
  InvalidWeights,
  InvalidMatrix,
  GroupTooLarge,
  InvalidElement,
  ZeroPolynomial,
  BasisMismatch,
  InconsistentAsymptotics,
  UnitFailure,
  NotUnique,
  NotFound,
  SupportOutsideIdeal,
  NotMonomialColumn,
  NonIntegerEntry,
  ThetaNotUnit,
  RelationFailure,
  TraceMismatch,
  Internal,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InfiniteGroup: return "InfiniteGroup";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::InconsistentAsymptotics: return "InconsistentAsymptotics";
    case ErrorCode::UnitFailure: return "UnitFailure";
    case ErrorCode::NotUnique: return "NotUnique";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::SupportOutsideIdeal: return "SupportOutsideIdeal";
    case ErrorCode::NotMonomialColumn: return "NotMonomialColumn";
    case ErrorCode::NonIntegerEntry: return "NonIntegerEntry";
    case ErrorCode::ThetaNotUnit: return "ThetaNotUnit";
    case ErrorCode::RelationFailure: return "RelationFailure";
    case ErrorCode::TraceMismatch: return "TraceMismatch";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class CellLabError : public std::runtime_error {
 public:
  CellLabError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw CellLabError(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace celllab
