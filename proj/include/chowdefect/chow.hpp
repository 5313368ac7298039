#pragma once

// Secant varieties of Chow varieties C_{d,n}: expected dimensions, tangent
// spaces of split forms and a brute-force Terracini rank for small cases.

#include <cstdint>
#include <vector>

#include "chowdefect/gfpoly.hpp"

namespace chowdefect {

/// p = l_1 ... l_d, all factors in the same n+1 variables.
class ChowPoint {
 public:
  explicit ChowPoint(std::vector<LinearForm> factors);

  int degree() const { return static_cast<int>(factors_.size()); }
  int n() const { return factors_.front().n(); }
  const std::vector<LinearForm>& factors() const { return factors_; }

 private:
  std::vector<LinearForm> factors_;
};

struct SecantProblem {
  int d;
  int n;
  std::int64_t s;

  SecantProblem(int d_, int n_, std::int64_t s_);
};

/// min{s(dn+1), C(n+d,d)} - 1.
std::int64_t expdim_secant(const SecantProblem& p);

/// The (n+1)*d columns nu_d(x_j * prod_{gamma != beta} l_gamma), beta outer.
std::vector<std::vector<Coeff>> tangent_columns(const ChowPoint& p, const PrimeField& field);

inline constexpr std::int64_t kOracleAmbientLimit = 100000;

/// Rank of the stacked tangent spaces at s random points drawn from `seed`.
/// Throws BudgetExceeded when C(n+d,d) exceeds kOracleAmbientLimit.
std::int64_t terracini_rank(const SecantProblem& p, std::uint64_t seed, const PrimeField& field, int threads = 1);

/// C(n+2,2) - C(n-2s+2,2) - 1, the dimension of the defective secant of the
/// quadric Chow variety, for n >= 4 and 2 <= s <= n/2.
std::int64_t chow_quadric_dim(int n, std::int64_t s);

enum class OracleClass { NondefectiveEvidence, Inconclusive, MatchesKnownDefective };

const char* to_string(OracleClass c);

/// A rank equal to expdim+1 is evidence of nondefectivity; a smaller rank is
/// only attributed to defectivity when it equals a known defective dimension.
OracleClass classify_oracle(const SecantProblem& p, std::int64_t rank);

}  // namespace chowdefect
