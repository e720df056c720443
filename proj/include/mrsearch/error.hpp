#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrsearch {

enum class ErrorCode {
  kInvalidArgument,
  kTooFewVertices,
  kNonOrthogonalEdge,
  kSelfIntersection,
  kOddVertexCount,
  kDegenerateEdge,
  kNonIntegralVertex,
  kEmptyInterior,
  kCellOutsideGraph,
  kOddTargetVertices,
  kIterationBudgetExceeded,
  kInstanceInvalid,
  kNotAPartition,
  kTripleSizeError,
  kTooFewRobots,
  kTooManyRobots,
  kDimensionMismatch,
  kUnreachable,
  kNonSquare,
  kNegativeEntry,
  kNonFiniteEntry,
  kEmptyInput,
  kIoError,
  kParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (and the Python bindings) can dispatch on it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mrsearch
