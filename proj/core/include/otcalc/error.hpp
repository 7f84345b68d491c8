#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace otcalc {

enum class ErrorKind {
  // numfield
  NotMonic,
  Reducible,
  DegreeTooSmall,
  SignatureUnsupported,
  DivisionByZero,
  NotIntegral,
  NotUnit,
  // otdata
  RankMismatch,
  NotTotallyPositiveUnit,
  DegenerateLattice,
  DeltaNotInvariant,
  PrecisionExhausted,
  // cealgebra / cohomology
  BackendDisagreement,
  UndecidedCharacter,
  NotTypeS1,
  FrolicherFailure,
  InternalInconsistency,
  // cli
  ConfigError,
  UnknownPreset,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Process exit status for an error kind: 1 math/internal, 2 config, 3 precision/undecided.
int exit_code(ErrorKind kind) noexcept;

/// Every failure in the library is reported through this type. `module` and
/// `operation` name where it was raised so the CLI can emit provenance.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, std::string operation, const std::string& message)
      : std::runtime_error(message),
        kind_(kind),
        module_(std::move(module)),
        operation_(std::move(operation)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& operation() const noexcept { return operation_; }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string operation_;
};

}  // namespace otcalc
