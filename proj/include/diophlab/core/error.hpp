#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diophlab {

enum class ErrorCode {
  Usage,
  Parse,
  InvalidArgument,
  PrecisionInsufficient,
  UnevaluatableDigitStream,
  LengthMismatch,
  DimensionMismatch,
  ZeroTheta,
  RationalTheta,
  NotPositive,
  KRational,
  DependentRows,
  NotAutomorphism,
  NonIntegralCoefficients,
  UnsupportedProjection,
  WrongInstanceShape,
  WitnessNotFound,
  SearchExhausted,
  EnumerationCapExceeded,
  CapExceeded,
};

// Process exit status: 2 usage or malformed input, 3 violated precondition,
// 4 exhausted bound or cap.
int exit_status(ErrorCode code);
std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace diophlab
