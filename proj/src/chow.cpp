#include "chowdefect/chow.hpp"

#include <algorithm>

#include "chowdefect/checked.hpp"
#include "chowdefect/error.hpp"
#include "chowdefect/finite_calculus.hpp"
#include "chowdefect/gflinalg.hpp"
#include "chowdefect/sampling.hpp"

namespace chowdefect {

ChowPoint::ChowPoint(std::vector<LinearForm> factors) : factors_(std::move(factors)) {
  require(!factors_.empty(), ErrorCode::InvalidArgument, "a Chow point needs at least one factor");
  for (const auto& f : factors_)
    require(f.n() == factors_.front().n(), ErrorCode::DimensionMismatch, "factors live in different spaces");
}

SecantProblem::SecantProblem(int d_, int n_, std::int64_t s_) : d(d_), n(n_), s(s_) {
  require(d >= 1 && n >= 1 && s >= 1, ErrorCode::InvalidArgument, "secant problem needs d, n, s >= 1");
}

std::int64_t expdim_secant(const SecantProblem& p) {
  const std::int64_t m = checked::add(checked::mul(p.d, p.n), 1);
  return std::min(checked::mul(p.s, m), basis_size(p.n, p.d)) - 1;
}

std::vector<std::vector<Coeff>> tangent_columns(const ChowPoint& p, const PrimeField& field) {
  const auto partial = leave_one_out_products(HomPoly::one(p.n()), p.factors(), field);
  std::vector<std::vector<Coeff>> cols;
  cols.reserve(partial.size() * static_cast<std::size_t>(p.n() + 1));
  for (const auto& q : partial)
    for (int j = 0; j <= p.n(); ++j) {
      const HomPoly c = mul_variable(q, j);
      cols.emplace_back(c.coeffs().begin(), c.coeffs().end());
    }
  return cols;
}

std::int64_t terracini_rank(const SecantProblem& p, std::uint64_t seed, const PrimeField& field, int threads) {
  const std::int64_t rows = basis_size(p.n, p.d);
  require(rows <= kOracleAmbientLimit, ErrorCode::BudgetExceeded,
          "ambient dimension " + std::to_string(rows) + " exceeds the oracle limit");
  KeyedSampler sampler(seed, field);
  std::vector<std::vector<Coeff>> cols;
  for (std::int64_t i = 0; i < p.s; ++i) {
    std::vector<LinearForm> factors;
    for (int g = 0; g < p.d; ++g) factors.push_back(sampler.draw(FormLabel{"l", {i, g}}, p.n + 1, 0, 0));
    auto tc = tangent_columns(ChowPoint(std::move(factors)), field);
    for (auto& c : tc) cols.push_back(std::move(c));
  }
  RankOptions opts;
  opts.threads = threads;
  return rank_mod_p(from_columns(cols, rows, field.modulus()), opts);
}

std::int64_t chow_quadric_dim(int n, std::int64_t s) {
  require(n >= 4 && s >= 2 && 2 * s <= n, ErrorCode::DomainError, "outside the defective quadric range");
  return binomial(n + 2, 2) - binomial(n - 2 * s + 2, 2) - 1;
}

const char* to_string(OracleClass c) {
  switch (c) {
    case OracleClass::NondefectiveEvidence: return "NONDEFECTIVE-EVIDENCE";
    case OracleClass::Inconclusive: return "INCONCLUSIVE";
    case OracleClass::MatchesKnownDefective: return "MATCHES-KNOWN-DEFECTIVE";
  }
  return "INCONCLUSIVE";
}

OracleClass classify_oracle(const SecantProblem& p, std::int64_t rank) {
  if (rank == expdim_secant(p) + 1) return OracleClass::NondefectiveEvidence;
  if (p.d == 2 && p.n >= 4 && p.s >= 2 && 2 * p.s <= p.n && rank == chow_quadric_dim(p.n, p.s) + 1)
    return OracleClass::MatchesKnownDefective;
  return OracleClass::Inconclusive;
}

}  // namespace chowdefect
