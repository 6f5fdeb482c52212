#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lefschetz {

enum class ErrorCode {
  NonPrimeCharacteristic,
  EmptyAlgebra,
  InvalidArgument,
  HilbertOverflow,
  DegreeOutOfRange,
  NotABasisElement,
  PartsMismatch,
  DimensionMismatch,
  DimensionCap,
  InvalidLambda,
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library. The code identifies the
/// failure class; what() carries a human-readable detail message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lefschetz
