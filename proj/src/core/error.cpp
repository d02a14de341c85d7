#include "diophlab/core/error.hpp"

namespace diophlab {

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Usage:
    case ErrorCode::Parse:
      return 2;
    case ErrorCode::PrecisionInsufficient:
    case ErrorCode::UnevaluatableDigitStream:
    case ErrorCode::WitnessNotFound:
    case ErrorCode::SearchExhausted:
    case ErrorCode::EnumerationCapExceeded:
    case ErrorCode::CapExceeded:
      return 4;
    default:
      return 3;
  }
}

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorCode::UnevaluatableDigitStream: return "UnevaluatableDigitStream";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroTheta: return "ZeroTheta";
    case ErrorCode::RationalTheta: return "RationalTheta";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::KRational: return "KRational";
    case ErrorCode::DependentRows: return "DependentRows";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NonIntegralCoefficients: return "NonIntegralCoefficients";
    case ErrorCode::UnsupportedProjection: return "UnsupportedProjection";
    case ErrorCode::WrongInstanceShape: return "WrongInstanceShape";
    case ErrorCode::WitnessNotFound: return "WitnessNotFound";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorCode::CapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

}  // namespace diophlab
