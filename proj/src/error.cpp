#include "nilgal/error.hpp"

namespace nilgal {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TrivialGroup: return "TrivialGroup";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::InvalidChain: return "InvalidChain";
    case ErrorKind::QuotientMismatch: return "QuotientMismatch";
    case ErrorKind::NotAction: return "NotAction";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::PropertyViolated: return "PropertyViolated";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::UnknownTheorem: return "UnknownTheorem";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace nilgal
