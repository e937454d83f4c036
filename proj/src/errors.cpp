#include "crackdiff/errors.hpp"

namespace crackdiff {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ProfileMassMismatch: return "ProfileMassMismatch";
    case ErrorCode::InconsistentMode: return "InconsistentMode";
    case ErrorCode::AlignmentError: return "AlignmentError";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::OddCellCount: return "OddCellCount";
    case ErrorCode::SolverDivergence: return "SolverDivergence";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NaNDetected: return "NaNDetected";
    case ErrorCode::NotBoundaryFace: return "NotBoundaryFace";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::BetaUnsupported: return "BetaUnsupported";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::DeltaMisaligned: return "DeltaMisaligned";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::MissingArtifact: return "MissingArtifact";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace crackdiff
