#include "otcalc/error.hpp"

namespace otcalc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::SignatureUnsupported: return "SignatureUnsupported";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotTotallyPositiveUnit: return "NotTotallyPositiveUnit";
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::DeltaNotInvariant: return "DeltaNotInvariant";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::BackendDisagreement: return "BackendDisagreement";
    case ErrorKind::UndecidedCharacter: return "UndecidedCharacter";
    case ErrorKind::NotTypeS1: return "NotTypeS1";
    case ErrorKind::FrolicherFailure: return "FrolicherFailure";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::UnknownPreset:
    case ErrorKind::NotMonic:
    case ErrorKind::Reducible:
    case ErrorKind::DegreeTooSmall:
    case ErrorKind::SignatureUnsupported:
    case ErrorKind::RankMismatch:
    case ErrorKind::NotTotallyPositiveUnit:
    case ErrorKind::NotIntegral:
      return 2;
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::UndecidedCharacter:
      return 3;
    default:
      return 1;
  }
}

}  // namespace otcalc
