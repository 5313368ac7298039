#pragma once

// Plain-text proof certificates: emission, parsing and re-verification from
// the recorded linear forms.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chowdefect/bolattice.hpp"

namespace chowdefect {

struct Certificate {
  std::uint64_t seed = 0;
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<RecordedForm> forms;
  std::string construct_line;  // timing lines, kept verbatim
  std::string rank_line;
  std::uint32_t prime = 0;
  std::int64_t found = 0;
  std::int64_t expected = 0;
  int order = 0;
  int n_or_d = 3;
  std::int64_t t = 0;
  std::int64_t step = 27;
  Verdict verdict = Verdict::Unverified;
  Abundance abundance = Abundance::Equi;
  std::vector<std::pair<std::string, std::string>> trailer;

  /// Value of a trailer key, or empty.
  std::string trailer_value(const std::string& key) const;
};

/// Certificate text for an outcome; the timing lines use 3 decimals.
std::string emit_text(const VerificationOutcome& outcome);
std::string emit_text(const Certificate& cert);

/// Throws ParseError (with the 1-based line number) on malformed input and
/// InvariantViolation if a coefficient is not below the prime.
Certificate parse_certificate(const std::string& text);

/// True if `line` is one of the two timing lines.
bool is_timing_line(const std::string& line);

struct ReverifyResult {
  bool confirmed = false;
  Family family = Family::Quaternary;
  Branch branch = Branch::S1;
  VerificationOutcome outcome;
  std::vector<std::string> mismatches;
};

/// Rebuilds T from the recorded forms (not the seed), recomputes the rank and
/// compares everything the certificate claims. Family and branch come from
/// the trailer when present and are otherwise inferred. Throws
/// DimensionMismatch when the recorded forms contradict the point plan.
ReverifyResult reverify(const Certificate& cert, const VerifyOptions& opts = {});

}  // namespace chowdefect
