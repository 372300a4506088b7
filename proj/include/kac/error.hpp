#pragma once

#include <stdexcept>
#include <string>

namespace kac {

enum class ErrorCode {
  InvalidShape,
  NotPositive,
  ZeroOperator,
  BadExponent,
  AxiomFailure,
  BlockDecompositionFailure,
  AlgebraMismatch,
  NotProjection,
  NotBiprojection,
  ZeroResult,
  ShiftMismatch,
  DimensionCap,
  NotExtremalBPI,
  ReconstructionFailure,
  PreconditionFailed,
  NoConvergence,
  HypothesisFailed,
  TheoremViolation,
  InvalidTable,
  KindMismatch,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::AxiomFailure: return "AxiomFailure";
    case ErrorCode::BlockDecompositionFailure: return "BlockDecompositionFailure";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NotProjection: return "NotProjection";
    case ErrorCode::NotBiprojection: return "NotBiprojection";
    case ErrorCode::ZeroResult: return "ZeroResult";
    case ErrorCode::ShiftMismatch: return "ShiftMismatch";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::NotExtremalBPI: return "NotExtremalBPI";
    case ErrorCode::ReconstructionFailure: return "ReconstructionFailure";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kac
