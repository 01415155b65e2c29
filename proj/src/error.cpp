#include "sepvol/error.hpp"

namespace sepvol {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotInRange: return "NotInRange";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace sepvol
