#include "inar/error.hpp"

namespace inar {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonStationaryKernel: return "NonStationaryKernel";
    case ErrorCode::InvalidRate: return "InvalidRate";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::LagTooLarge: return "LagTooLarge";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::SampleSizeOutOfRange: return "SampleSizeOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::AllReplicationsFailed: return "AllReplicationsFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace inar
