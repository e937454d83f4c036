#ifndef CRACKDIFF_ERRORS_HPP
#define CRACKDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace crackdiff {

enum class ErrorCode {
  OutOfRange,
  ProfileMassMismatch,
  InconsistentMode,
  AlignmentError,
  EmptyGrid,
  DegenerateInterval,
  OddCellCount,
  SolverDivergence,
  NoConvergence,
  NaNDetected,
  NotBoundaryFace,
  DomainMismatch,
  ZeroDenominator,
  BetaUnsupported,
  InsufficientPoints,
  DeltaMisaligned,
  ConfigError,
  MissingArtifact,
  IoError,
};

const char* error_code_name(ErrorCode c);

// Single exception type; the code is what tests and the CLI exit mapping key on.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace crackdiff

#endif
