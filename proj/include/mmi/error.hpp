#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mmi {

enum class ErrorCode {
  // input validation
  InvalidArgument,
  InvalidInput,
  NotNegativeDefinite,
  NotATree,
  DanglingReference,
  DuplicateId,
  DimensionMismatch,
  NotAntinef,
  NonIntegralDivisor,
  GraphMismatch,
  PreconditionViolated,
  ZeroPoint,
  ZeroDivisor,
  NotAJumpingPoint,
  IntegralityViolated,
  CandidateExplosion,
  UnboundedRegion,
  // capability
  GeometryUnsupported,
  // bugs
  NonTermination,
  GeometryDegeneracy,
  InvariantBreach,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotNegativeDefinite: return "NotNegativeDefinite";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotAntinef: return "NotAntinef";
    case ErrorCode::NonIntegralDivisor: return "NonIntegralDivisor";
    case ErrorCode::GraphMismatch: return "GraphMismatch";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ZeroPoint: return "ZeroPoint";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::NotAJumpingPoint: return "NotAJumpingPoint";
    case ErrorCode::IntegralityViolated: return "IntegralityViolated";
    case ErrorCode::CandidateExplosion: return "CandidateExplosion";
    case ErrorCode::UnboundedRegion: return "UnboundedRegion";
    case ErrorCode::GeometryUnsupported: return "GeometryUnsupported";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::GeometryDegeneracy: return "GeometryDegeneracy";
    case ErrorCode::InvariantBreach: return "InvariantBreach";
  }
  return "Unknown";
}

/// Errors that indicate a bug in this library rather than bad input.
inline bool is_internal(ErrorCode code) {
  return code == ErrorCode::NonTermination || code == ErrorCode::GeometryDegeneracy ||
         code == ErrorCode::InvariantBreach;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mmi
