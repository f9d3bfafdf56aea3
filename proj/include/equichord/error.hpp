#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace equichord {

enum class ErrorCode {
  NoTangency,
  FlatBoundary,
  NoIntersection,
  DegenerateChord,
  ConvexityViolation,
  EmptySection,
  InnerNotContained,
  BadDelta,
  EmptyFloatingBody,
  BadState,
  InsideInner,
  TangencyFailure,
  BadSigma,
  SigmaTooLarge,
  OutOfRange,
  SupportTooSmall,
  RadicandNegative,
  ArcMismatch,
  InvalidBody,
  UsageError,
  IoError,
};

// Stable diagnostic tag for each code, e.g. "E_NO_TANGENCY".
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the moving-chord sweep when a swept chord endpoint leaves the
// circle of radius f(0).  Carries the abscissa and size of the deviation.
class ArcMismatchError : public Error {
 public:
  ArcMismatchError(double x, double deviation);

  double x() const noexcept { return x_; }
  double deviation() const noexcept { return deviation_; }

 private:
  double x_;
  double deviation_;
};

}  // namespace equichord
