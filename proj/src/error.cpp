#include "semiradius/error.hpp"

namespace semiradius {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNoAdjoint: return "NoAdjoint";
    case ErrorCode::kInternalDisagreement: return "InternalDisagreement";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kUnknownConjugator: return "UnknownConjugator";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kRequiresStrictA: return "RequiresStrictA";
    case ErrorCode::kUnknownCheckId: return "UnknownCheckId";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace semiradius
