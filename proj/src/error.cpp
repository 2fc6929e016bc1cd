#include "hermlock/error.hpp"

namespace hermlock {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NotInOnePlusM: return "NotInOnePlusM";
    case ErrorKind::NotANorm: return "NotANorm";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NonCommutativeRing: return "NonCommutativeRing";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NotUnitaryInput: return "NotUnitaryInput";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::IdealNotSquareZero: return "IdealNotSquareZero";
    case ErrorKind::BadNormalForm: return "BadNormalForm";
    case ErrorKind::RNotInRadical: return "RNotInRadical";
    case ErrorKind::InvalidQuery: return "InvalidQuery";
    case ErrorKind::NoSuchVector: return "NoSuchVector";
    case ErrorKind::InvalidCase: return "InvalidCase";
    case ErrorKind::NotFixed: return "NotFixed";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace hermlock
