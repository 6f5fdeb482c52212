#include "lefschetz/error.hpp"

namespace lefschetz {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorCode::EmptyAlgebra: return "EmptyAlgebra";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::HilbertOverflow: return "HilbertOverflow";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::NotABasisElement: return "NotABasisElement";
    case ErrorCode::PartsMismatch: return "PartsMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
  }
  return "Unknown";
}

}  // namespace lefschetz
