#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inar {

enum class ErrorCode {
  InvalidParameter,
  NonStationaryKernel,
  InvalidRate,
  Overflow,
  LagTooLarge,
  SingularDesign,
  DimensionMismatch,
  InvalidLevel,
  ZeroVariance,
  SampleSizeOutOfRange,
  DomainError,
  AllReplicationsFailed,
  ParseError,
  ValidationError,
  IoError,
};

/// Stable machine-readable name, e.g. "SingularDesign".
std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can report it on a single parsable line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace inar
