#include <minkspec/error.hpp>

namespace minkspec {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::PoleEvaluation: return "PoleEvaluation";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::Unclassifiable: return "Unclassifiable";
    case ErrorKind::AmbiguousSign: return "AmbiguousSign";
    case ErrorKind::CanonicalViolation: return "CanonicalViolation";
    case ErrorKind::OracleDivergence: return "OracleDivergence";
    case ErrorKind::TangencyDerivative: return "TangencyDerivative";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NotHermitian:
    case ErrorKind::NonFiniteEntry:
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::IoError:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace minkspec
