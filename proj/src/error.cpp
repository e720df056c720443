#include "mrsearch/error.hpp"

namespace mrsearch {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kTooFewVertices: return "TooFewVertices";
    case ErrorCode::kNonOrthogonalEdge: return "NonOrthogonalEdge";
    case ErrorCode::kSelfIntersection: return "SelfIntersection";
    case ErrorCode::kOddVertexCount: return "OddVertexCount";
    case ErrorCode::kDegenerateEdge: return "DegenerateEdge";
    case ErrorCode::kNonIntegralVertex: return "NonIntegralVertex";
    case ErrorCode::kEmptyInterior: return "EmptyInterior";
    case ErrorCode::kCellOutsideGraph: return "CellOutsideGraph";
    case ErrorCode::kOddTargetVertices: return "OddTargetVertices";
    case ErrorCode::kIterationBudgetExceeded: return "IterationBudgetExceeded";
    case ErrorCode::kInstanceInvalid: return "InstanceInvalid";
    case ErrorCode::kNotAPartition: return "NotAPartition";
    case ErrorCode::kTripleSizeError: return "TripleSizeError";
    case ErrorCode::kTooFewRobots: return "TooFewRobots";
    case ErrorCode::kTooManyRobots: return "TooManyRobots";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kUnreachable: return "Unreachable";
    case ErrorCode::kNonSquare: return "NonSquare";
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace mrsearch
