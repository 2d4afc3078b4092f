#include "sftok/error.hpp"

namespace sftok {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::ZeroCount: return "ZeroCount";
    case ErrorCode::EmptyVideo: return "EmptyVideo";
    case ErrorCode::DecodeFailure: return "DecodeFailure";
    case ErrorCode::NonDivisibleStride: return "NonDivisibleStride";
    case ErrorCode::TargetExceedsInput: return "TargetExceedsInput";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::MissingOptions: return "MissingOptions";
    case ErrorCode::UnexpectedOptions: return "UnexpectedOptions";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Unparseable: return "Unparseable";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadFrameSize: return "BadFrameSize";
    case ErrorCode::NonDivisiblePatch: return "NonDivisiblePatch";
    case ErrorCode::FrameCountMismatch: return "FrameCountMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace sftok
