#include "cloneforge/error.hpp"

namespace cloneforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::BadMap: return "BadMap";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::IncompleteList: return "IncompleteList";
    case ErrorCode::NotMinorsTrivial: return "NotMinorsTrivial";
    case ErrorCode::SwierczkowskiViolation: return "SwierczkowskiViolation";
    case ErrorCode::NotMinority: return "NotMinority";
    case ErrorCode::NotConservative: return "NotConservative";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::WrongType: return "WrongType";
    case ErrorCode::Idempotent: return "Idempotent";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace cloneforge
