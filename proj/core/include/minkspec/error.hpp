#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minkspec {

enum class ErrorKind {
  // Input problems.
  DimensionMismatch,
  NotHermitian,
  NonFiniteEntry,
  ParseError,
  ValidationError,
  InvalidArgument,
  IoError,
  // Numerical failures.
  ConvergenceFailure,
  PoleEvaluation,
  CountMismatch,
  Unclassifiable,
  AmbiguousSign,
  CanonicalViolation,
  OracleDivergence,
  TangencyDerivative,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for errors caused by the caller's data rather than by the numerics.
bool is_input_error(ErrorKind kind) noexcept;

/// Every failure raised by the library carries its kind so that callers
/// (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix that what() carries.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace minkspec
