#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ectop {

enum class ErrorCode {
    DuplicateEdge,
    SelfLoop,
    IndexOutOfRange,
    WeightLengthMismatch,
    NonFiniteWeight,
    NonFiniteValue,
    InvalidDimensions,
    EmptyThresholds,
    NonMonotoneThresholds,
    DegenerateRange,
    MissingEdgeWeights,
    MissingNodeWeights,
    UnsupportedDirection,
    TooLarge,
    NotClosed,
    DuplicateCell,
    SingularMatrix,
    NotSymmetric,
    NotSPD,
    NonpositiveDiagonal,
    EmptyCloud,
    GridTooSmall,
    InvalidParameter,
    ThresholdMismatch,
    ConstantField,
    SingleClass,
    DimMismatch,
    UnstableStep,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code; what() is "<Code>: detail".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }

    /// Numeric failures map to CLI exit code 3; everything else to 2.
    bool is_numeric() const noexcept;

private:
    ErrorCode code_;
};

}  // namespace ectop
