#include "ectop/error.hpp"

namespace ectop {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::WeightLengthMismatch: return "WeightLengthMismatch";
        case ErrorCode::NonFiniteWeight: return "NonFiniteWeight";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::InvalidDimensions: return "InvalidDimensions";
        case ErrorCode::EmptyThresholds: return "EmptyThresholds";
        case ErrorCode::NonMonotoneThresholds: return "NonMonotoneThresholds";
        case ErrorCode::DegenerateRange: return "DegenerateRange";
        case ErrorCode::MissingEdgeWeights: return "MissingEdgeWeights";
        case ErrorCode::MissingNodeWeights: return "MissingNodeWeights";
        case ErrorCode::UnsupportedDirection: return "UnsupportedDirection";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::DuplicateCell: return "DuplicateCell";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotSPD: return "NotSPD";
        case ErrorCode::NonpositiveDiagonal: return "NonpositiveDiagonal";
        case ErrorCode::EmptyCloud: return "EmptyCloud";
        case ErrorCode::GridTooSmall: return "GridTooSmall";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::ThresholdMismatch: return "ThresholdMismatch";
        case ErrorCode::ConstantField: return "ConstantField";
        case ErrorCode::SingleClass: return "SingleClass";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::UnstableStep: return "UnstableStep";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

bool Error::is_numeric() const noexcept {
    return code_ == ErrorCode::SingularMatrix || code_ == ErrorCode::NotSPD;
}

}  // namespace ectop
