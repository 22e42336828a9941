#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsp {

enum class ErrorCode {
  // validation
  InvalidArgument,
  NonSquare,
  NonFinite,
  DimensionMismatch,
  InvalidPermutation,
  InvalidP,
  DuplicateIndex,
  OutOfRange,
  SampleCountMismatch,
  BandExceedsN,
  TooLarge,
  TooMany,
  BadK,
  BandsNotPartition,
  BadP,
  OddN,
  ParseError,
  DimensionHeaderMismatch,
  IoError,
  UnknownCommand,
  BadFlag,
  // numerical
  Defective,
  NumericalFailure,
  NotQualified,
  NoQualifiedOperatorFound,
  DecompositionFailuresExceeded,
  ScalingUnavailable,
  DegenerateFeatures,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for failures caused by the numbers themselves (defective shifts,
/// unqualified operators, ...) rather than by malformed input.
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace gsp
