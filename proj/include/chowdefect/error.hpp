#pragma once

#include <stdexcept>
#include <string>

namespace chowdefect {

enum class ErrorCode {
  InvalidArgument,
  DomainError,
  NonIntegralValue,
  Overflow,
  IndexOutOfRange,
  DimensionMismatch,
  EmptyProduct,
  BudgetExceeded,
  NegativeCount,
  ParseError,
  InvariantViolation,
  Io,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the core library carries one of the codes above;
/// the C API maps them one-to-one onto cd_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace chowdefect
