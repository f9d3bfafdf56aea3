#include "equichord/error.hpp"

#include <cstdio>

namespace equichord {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoTangency: return "E_NO_TANGENCY";
    case ErrorCode::FlatBoundary: return "E_FLAT_BOUNDARY";
    case ErrorCode::NoIntersection: return "E_NO_INTERSECTION";
    case ErrorCode::DegenerateChord: return "E_DEGENERATE_CHORD";
    case ErrorCode::ConvexityViolation: return "E_CONVEXITY_VIOLATION";
    case ErrorCode::EmptySection: return "E_EMPTY_SECTION";
    case ErrorCode::InnerNotContained: return "E_INNER_NOT_CONTAINED";
    case ErrorCode::BadDelta: return "E_BAD_DELTA";
    case ErrorCode::EmptyFloatingBody: return "E_EMPTY_FLOATING_BODY";
    case ErrorCode::BadState: return "E_BAD_STATE";
    case ErrorCode::InsideInner: return "E_INSIDE_INNER";
    case ErrorCode::TangencyFailure: return "E_TANGENCY_FAILURE";
    case ErrorCode::BadSigma: return "E_BAD_SIGMA";
    case ErrorCode::SigmaTooLarge: return "E_SIGMA_TOO_LARGE";
    case ErrorCode::OutOfRange: return "E_OUT_OF_RANGE";
    case ErrorCode::SupportTooSmall: return "E_SUPPORT_TOO_SMALL";
    case ErrorCode::RadicandNegative: return "E_RADICAND_NEGATIVE";
    case ErrorCode::ArcMismatch: return "E_ARC_MISMATCH";
    case ErrorCode::InvalidBody: return "E_INVALID_BODY";
    case ErrorCode::UsageError: return "E_USAGE";
    case ErrorCode::IoError: return "E_IO";
  }
  return "E_UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

namespace {
std::string arc_detail(double x, double deviation) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "swept endpoint at x=%.12g deviates from the f(0) circle by %.6g", x,
                deviation);
  return buf;
}
}  // namespace

ArcMismatchError::ArcMismatchError(double x, double deviation)
    : Error(ErrorCode::ArcMismatch, arc_detail(x, deviation)), x_(x), deviation_(deviation) {}

}  // namespace equichord
