#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spfq {

enum class Errc {
  NotPrime,
  NotPrimePower,
  ReducibleModulus,
  FieldTooLarge,
  ZeroInverse,
  EmptySubset,
  ShapeMismatch,
  FieldMismatch,
  ParseError,
  ValueOutOfRange,
  BadEpsilon,
  NBelow18,
  FieldTooSmallForN,
  DomainError,
  PreconditionUnmet,
  KTooSmall,
  KTooLarge,
  BadShape,
  WrongPath,
  RankDeficientInput,
  GenerationFailed,
  SpaceTooLarge,
  TooLarge,
  InvalidArgument,
  IoError,
};

const char* errc_name(Errc c);

// Process exit status for an error: 2 usage, 3 field, 4 parameters and
// analysis preconditions, 5 input/output, 6 matrix shape, 7 limits.
int exit_code(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Raised by the SMS reader; line is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(Errc::ParseError, "line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

}  // namespace spfq
