#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhr {

enum class ErrorKind {
  DimensionMismatch,
  NotGroupMember,
  NotInvolutionLike,
  MismatchedModuli,
  ZeroInput,
  NotUnit,
  ConvergenceFailure,
  NotHyperbolic,
  DegenerateTriple,
  ZeroTriple,
  InvariantMismatch,
  DegenerateConfiguration,
  InvalidLift,
  NotReverser,
  SquareCheckFailed,
  NotRotation,
  FactorizationFailure,
  ZeroParameter,
  PreconditionViolated,
  CommonFixedPoint,
  NotFactorization,
  UnknownGroup,
  MalformedInput,
};

std::string_view to_string(ErrorKind kind);

// Domain error. The kind name doubles as the machine-readable error tag
// reported by the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace qhr
