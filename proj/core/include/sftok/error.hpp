#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sftok {

enum class ErrorCode {
  DimensionMismatch,
  NonFiniteValue,
  IoFailure,
  BadMagic,
  UnsupportedVersion,
  TruncatedPayload,
  ZeroCount,
  EmptyVideo,
  DecodeFailure,
  NonDivisibleStride,
  TargetExceedsInput,
  InvalidConfig,
  InvalidSpec,
  MissingOptions,
  UnexpectedOptions,
  InvalidArgument,
  Unparseable,
  OutOfRange,
  BadFrameSize,
  NonDivisiblePatch,
  FrameCountMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported as Error. what() reads "<CodeName>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sftok
