#pragma once

#include <cstdint>
#include <string>

#include "chowdefect/error.hpp"

// Overflow-checked 64-bit arithmetic. Certificates must never rest on a
// wrapped integer, so every counting path goes through these.
namespace chowdefect::checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    fail(ErrorCode::Overflow, "integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    fail(ErrorCode::Overflow, "integer overflow in " + std::to_string(a) + " - " + std::to_string(b));
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    fail(ErrorCode::Overflow, "integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
  return r;
}

inline std::uint64_t umul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    fail(ErrorCode::Overflow, "unsigned overflow in " + std::to_string(a) + " * " + std::to_string(b));
  return r;
}

inline std::uint64_t uadd(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    fail(ErrorCode::Overflow, "unsigned overflow in " + std::to_string(a) + " + " + std::to_string(b));
  return r;
}

}  // namespace chowdefect::checked
