#pragma once

// Exact arithmetic identities behind the induction, scanned over a range of t.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chowdefect/bolattice.hpp"

namespace chowdefect {

struct SelfcheckOptions {
  std::int64_t t_max = 200;
  /// Replaces the a-table of s1 (mutation testing).
  std::optional<std::array<std::int64_t, 27>> a_table;
};

struct SelfcheckReport {
  struct Tally {
    std::string identity;
    std::int64_t checks = 0;
    std::int64_t failures = 0;
  };
  std::vector<Tally> tallies;
  std::vector<ArithmeticViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Newton's formula, the power rule (third difference 0, second difference
/// 81), the point-count identity, s2 = ceil(N/m), the Grassmann recursion
/// and a_{K0} = N beyond t0, for 1 <= t <= t_max and both families.
SelfcheckReport run_selfcheck(const SelfcheckOptions& opts = {});

}  // namespace chowdefect
