#include "spfq/error.hpp"

namespace spfq {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::EmptySubset: return "EmptySubset";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::ValueOutOfRange: return "ValueOutOfRange";
    case Errc::BadEpsilon: return "BadEpsilon";
    case Errc::NBelow18: return "NBelow18";
    case Errc::FieldTooSmallForN: return "FieldTooSmallForN";
    case Errc::DomainError: return "DomainError";
    case Errc::PreconditionUnmet: return "PreconditionUnmet";
    case Errc::KTooSmall: return "KTooSmall";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::BadShape: return "BadShape";
    case Errc::WrongPath: return "WrongPath";
    case Errc::RankDeficientInput: return "RankDeficientInput";
    case Errc::GenerationFailed: return "GenerationFailed";
    case Errc::SpaceTooLarge: return "SpaceTooLarge";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

int exit_code(Errc c) {
  switch (c) {
    case Errc::InvalidArgument:
      return 2;
    case Errc::NotPrime:
    case Errc::NotPrimePower:
    case Errc::ReducibleModulus:
    case Errc::FieldTooLarge:
    case Errc::ZeroInverse:
    case Errc::FieldMismatch:
      return 3;
    case Errc::BadEpsilon:
    case Errc::NBelow18:
    case Errc::FieldTooSmallForN:
    case Errc::PreconditionUnmet:
    case Errc::KTooSmall:
    case Errc::KTooLarge:
      return 4;
    case Errc::ParseError:
    case Errc::ValueOutOfRange:
    case Errc::IoError:
      return 5;
    case Errc::ShapeMismatch:
    case Errc::BadShape:
    case Errc::RankDeficientInput:
    case Errc::WrongPath:
      return 6;
    case Errc::EmptySubset:
    case Errc::DomainError:
    case Errc::GenerationFailed:
    case Errc::SpaceTooLarge:
    case Errc::TooLarge:
      return 7;
  }
  return 7;
}

}  // namespace spfq
