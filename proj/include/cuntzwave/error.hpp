#pragma once

#include <stdexcept>
#include <string>

namespace cuntzwave {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotSquare,
  NotHermitian,
  NotInvolution,
  SignatureMismatch,
  NegativeExponent,
  EvalAtZeroWithPole,
  SingularResolvent,
  ModulusNotLessThanOne,
  PoleAtSample,
  UnitPairing,
  AllSamplesHitPoles,
  NoSolution,
  ResidualTooLarge,
  HSingular,
  TooManyPolesOnCircle,
  IndexOutOfRange,
  TruncationTooSmall,
  PowerNotIdentity,
  DeterminantVanishes,
  RowCountMismatch,
  PNotJUnitary,
  SingularAtSample,
  NotInCN,
  ExponentNotMultipleOfN,
  NotPeriodicSymmetric,
  NoSimilarity,
  TNotInvertible,
  MalformedJSON,
  UnknownSubcommand,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// front ends can report it by name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const char* name() const noexcept { return to_string(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace cuntzwave
