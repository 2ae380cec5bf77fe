#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropdeg {

enum class ErrorKind {
  LoopRejected,
  Disconnected,
  DuplicateId,
  UnknownVertex,
  UnknownEdge,
  InvalidChain,
  NotEquivalent,
  NoNonnegativeTwist,
  InvalidSlope,
  IrrationalInput,
  NotEdgeReduced,
  PreconditionFailed,
  InvalidSpec,
  WitnessUnverified,
  BudgetExceeded,
  NotMultitree,
  ConditionIIViolated,
  InvalidFiltration,
  InconsistentProfile,
  ProfileViolatesI,
  ParseError,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every domain failure in the library is reported through this type; the
/// kind names the violated invariant.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Errors that come from malformed input rather than from the mathematics.
inline bool is_parse_error(ErrorKind kind) {
  return kind == ErrorKind::ParseError || kind == ErrorKind::IrrationalInput;
}

}  // namespace tropdeg
