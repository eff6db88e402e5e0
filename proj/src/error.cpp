#include "qhr/error.hpp"

namespace qhr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotGroupMember: return "NotGroupMember";
    case ErrorKind::NotInvolutionLike: return "NotInvolutionLike";
    case ErrorKind::MismatchedModuli: return "MismatchedModuli";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::DegenerateTriple: return "DegenerateTriple";
    case ErrorKind::ZeroTriple: return "ZeroTriple";
    case ErrorKind::InvariantMismatch: return "InvariantMismatch";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::InvalidLift: return "InvalidLift";
    case ErrorKind::NotReverser: return "NotReverser";
    case ErrorKind::SquareCheckFailed: return "SquareCheckFailed";
    case ErrorKind::NotRotation: return "NotRotation";
    case ErrorKind::FactorizationFailure: return "FactorizationFailure";
    case ErrorKind::ZeroParameter: return "ZeroParameter";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::CommonFixedPoint: return "CommonFixedPoint";
    case ErrorKind::NotFactorization: return "NotFactorization";
    case ErrorKind::UnknownGroup: return "UnknownGroup";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace qhr
