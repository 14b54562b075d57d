#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tpds {

enum class ErrorCode {
  // sign variation
  NotInV,
  // matrices
  DimensionMismatch,
  SizeLimitExceeded,
  NotTN,
  PivotBreakdown,
  SpectralViolation,
  ZeroVector,
  RankDeficient,
  OrderOutOfRange,
  NotTridiagonal,
  // expressions
  SyntaxError,
  UnknownIdentifier,
  UnboundVariable,
  DomainError,
  // systems and integration
  EmptySegments,
  InvalidSystem,
  OutOfInterval,
  IntegrationSuspect,
  TrivialSolution,
  MonotonicityViolation,
  CrossCheckFailed,
  NoApplicablePair,
  // periodic and nonlinear
  NotPeriodic,
  FloquetViolation,
  LeadingCoefficientZero,
  BandViolation,
  LeftDomain,
  NoMonotoneTail,
  AssumptionViolated,
  NoConvergence,
  // front end
  ParseError,
  UnknownFigure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` tells callers what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tpds
