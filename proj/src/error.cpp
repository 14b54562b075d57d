#include "tpds/error.hpp"

namespace tpds {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotInV: return "NotInV";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::NotTN: return "NotTN";
    case ErrorCode::PivotBreakdown: return "PivotBreakdown";
    case ErrorCode::SpectralViolation: return "SpectralViolation";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::NotTridiagonal: return "NotTridiagonal";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::EmptySegments: return "EmptySegments";
    case ErrorCode::InvalidSystem: return "InvalidSystem";
    case ErrorCode::OutOfInterval: return "OutOfInterval";
    case ErrorCode::IntegrationSuspect: return "IntegrationSuspect";
    case ErrorCode::TrivialSolution: return "TrivialSolution";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::CrossCheckFailed: return "CrossCheckFailed";
    case ErrorCode::NoApplicablePair: return "NoApplicablePair";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::FloquetViolation: return "FloquetViolation";
    case ErrorCode::LeadingCoefficientZero: return "LeadingCoefficientZero";
    case ErrorCode::BandViolation: return "BandViolation";
    case ErrorCode::LeftDomain: return "LeftDomain";
    case ErrorCode::NoMonotoneTail: return "NoMonotoneTail";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownFigure: return "UnknownFigure";
  }
  return "Unknown";
}

}  // namespace tpds
