#include "rdyn/errors.hpp"

namespace rdyn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::NotReducible: return "NotReducible";
    case ErrorCode::DegenerateDivisor: return "DegenerateDivisor";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::DegenerateParameters: return "DegenerateParameters";
    case ErrorCode::DegenerateEvaluation: return "DegenerateEvaluation";
    case ErrorCode::NoPrimePeriodTwo: return "NoPrimePeriodTwo";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace rdyn
