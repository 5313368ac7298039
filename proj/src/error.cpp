#include "chowdefect/error.hpp"

namespace chowdefect {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DomainError: return "domain error";
    case ErrorCode::NonIntegralValue: return "non-integral value";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::IndexOutOfRange: return "index out of range";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::EmptyProduct: return "empty product";
    case ErrorCode::BudgetExceeded: return "budget exceeded";
    case ErrorCode::NegativeCount: return "negative count";
    case ErrorCode::ParseError: return "parse error";
    case ErrorCode::InvariantViolation: return "invariant violation";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

}  // namespace chowdefect
