#include "gsp/error.hpp"

namespace gsp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SampleCountMismatch: return "SampleCountMismatch";
    case ErrorCode::BandExceedsN: return "BandExceedsN";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TooMany: return "TooMany";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::BandsNotPartition: return "BandsNotPartition";
    case ErrorCode::BadP: return "BadP";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionHeaderMismatch: return "DimensionHeaderMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::BadFlag: return "BadFlag";
    case ErrorCode::Defective: return "Defective";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NotQualified: return "NotQualified";
    case ErrorCode::NoQualifiedOperatorFound: return "NoQualifiedOperatorFound";
    case ErrorCode::DecompositionFailuresExceeded: return "DecompositionFailuresExceeded";
    case ErrorCode::ScalingUnavailable: return "ScalingUnavailable";
    case ErrorCode::DegenerateFeatures: return "DegenerateFeatures";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Defective:
    case ErrorCode::NumericalFailure:
    case ErrorCode::NotQualified:
    case ErrorCode::NoQualifiedOperatorFound:
    case ErrorCode::DecompositionFailuresExceeded:
    case ErrorCode::ScalingUnavailable:
    case ErrorCode::DegenerateFeatures:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace gsp
