#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hermlock {

/// Domain error categories. Names are surfaced verbatim by the CLI.
enum class ErrorKind {
  InvalidSpec,
  ParseError,
  NotAUnit,
  RingMismatch,
  NotInOnePlusM,
  NotANorm,
  BudgetExceeded,
  DimensionMismatch,
  NotInvertible,
  NonCommutativeRing,
  Degenerate,
  NotHermitian,
  LengthMismatch,
  NotPrimitive,
  NotUnitaryInput,
  PreconditionViolated,
  IdealNotSquareZero,
  BadNormalForm,
  RNotInRadical,
  InvalidQuery,
  NoSuchVector,
  InvalidCase,
  NotFixed,
  Internal,
};

std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hermlock
