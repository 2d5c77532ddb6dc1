#include "cuntzwave/error.hpp"

namespace cuntzwave {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::DimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::NotSquare:
      return "NotSquare";
    case ErrorCode::NotHermitian:
      return "NotHermitian";
    case ErrorCode::NotInvolution:
      return "NotInvolution";
    case ErrorCode::SignatureMismatch:
      return "SignatureMismatch";
    case ErrorCode::NegativeExponent:
      return "NegativeExponent";
    case ErrorCode::EvalAtZeroWithPole:
      return "EvalAtZeroWithPole";
    case ErrorCode::SingularResolvent:
      return "SingularResolvent";
    case ErrorCode::ModulusNotLessThanOne:
      return "ModulusNotLessThanOne";
    case ErrorCode::PoleAtSample:
      return "PoleAtSample";
    case ErrorCode::UnitPairing:
      return "UnitPairing";
    case ErrorCode::AllSamplesHitPoles:
      return "AllSamplesHitPoles";
    case ErrorCode::NoSolution:
      return "NoSolution";
    case ErrorCode::ResidualTooLarge:
      return "ResidualTooLarge";
    case ErrorCode::HSingular:
      return "HSingular";
    case ErrorCode::TooManyPolesOnCircle:
      return "TooManyPolesOnCircle";
    case ErrorCode::IndexOutOfRange:
      return "IndexOutOfRange";
    case ErrorCode::TruncationTooSmall:
      return "TruncationTooSmall";
    case ErrorCode::PowerNotIdentity:
      return "PowerNotIdentity";
    case ErrorCode::DeterminantVanishes:
      return "DeterminantVanishes";
    case ErrorCode::RowCountMismatch:
      return "RowCountMismatch";
    case ErrorCode::PNotJUnitary:
      return "PNotJUnitary";
    case ErrorCode::SingularAtSample:
      return "SingularAtSample";
    case ErrorCode::NotInCN:
      return "NotInCN";
    case ErrorCode::ExponentNotMultipleOfN:
      return "ExponentNotMultipleOfN";
    case ErrorCode::NotPeriodicSymmetric:
      return "NotPeriodicSymmetric";
    case ErrorCode::NoSimilarity:
      return "NoSimilarity";
    case ErrorCode::TNotInvertible:
      return "TNotInvertible";
    case ErrorCode::MalformedJSON:
      return "MalformedJSON";
    case ErrorCode::UnknownSubcommand:
      return "UnknownSubcommand";
  }
  return "Unknown";
}

}  // namespace cuntzwave
