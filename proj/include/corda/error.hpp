#pragma once

#include <stdexcept>
#include <string>

namespace corda {

enum class ErrorKind {
  FewerThanTwoPoints,
  DuplicatePoints,
  PointNotInConfiguration,
  DegenerateRay,
  NotOnCircle,
  NoOtherPointOnCircle,
  InvalidConfiguration,
  InvalidPattern,
  NotAgreementConfiguration,
  SizeMismatch,
  StatusNotMaximal,
  NoPartialPattern,
  NoExtraRobotOffCircle,
  NoFreePosition,
  NoNonCriticalRobot,
  SymmetricConfiguration,
  InvalidTolerance,
  ParseError,
  ValidationError,
  GenerationFailed,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace corda
