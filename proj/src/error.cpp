#include "eofb/error.hpp"

namespace eofb {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveMatrix: return "NonPositiveMatrix";
    case ErrorCode::DegenerateInvariants: return "DegenerateInvariants";
    case ErrorCode::NonPhysicalState: return "NonPhysicalState";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::IncomparableBlocks: return "IncomparableBlocks";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace eofb
