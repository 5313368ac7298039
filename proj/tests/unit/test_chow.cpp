#include <doctest.h>

#include <random>

#include "chowdefect/chow.hpp"
#include "chowdefect/error.hpp"
#include "chowdefect/finite_calculus.hpp"
#include "chowdefect/gflinalg.hpp"

using namespace chowdefect;

namespace {

const PrimeField F(8191);

LinearForm unit(int n, int j) {
  std::vector<Coeff> c(static_cast<std::size_t>(n + 1), 0);
  c[static_cast<std::size_t>(j)] = 1;
  return LinearForm(std::move(c), F);
}

std::int64_t tangent_rank(const ChowPoint& p) {
  const auto cols = tangent_columns(p, F);
  return rank_mod_p(from_columns(cols, basis_size(p.n(), p.degree()), F.modulus()));
}

}  // namespace

TEST_CASE("expected dimensions") {
  CHECK(expdim_secant({2, 4, 2}) == 14);
  CHECK(expdim_secant({3, 3, 1}) == 9);
  CHECK(expdim_secant({3, 4, 13}) == 34);
  CHECK_THROWS_AS(SecantProblem(0, 2, 1), Error);
  CHECK_THROWS_AS(SecantProblem(2, 0, 1), Error);
  CHECK_THROWS_AS(SecantProblem(2, 2, 0), Error);
}

TEST_CASE("tangent spaces") {
  const ChowPoint xy({unit(1, 0), unit(1, 1)});
  CHECK(tangent_columns(xy, F).size() == 4);
  CHECK(tangent_rank(xy) == 3);

  const ChowPoint cube({unit(3, 0), unit(3, 0), unit(3, 0)});
  CHECK(tangent_rank(cube) == 4);

  std::mt19937_64 rng(9);
  for (int d = 1; d <= 5; ++d)
    for (int n = 1; n <= 4; ++n) {
      std::vector<LinearForm> fs;
      for (int q = 0; q < d; ++q) {
        std::vector<Coeff> c(static_cast<std::size_t>(n + 1));
        for (auto& x : c) x = static_cast<Coeff>(1 + rng() % 8190);
        fs.emplace_back(std::move(c), F);
      }
      const ChowPoint p(fs);
      const auto cols = tangent_columns(p, F);
      CHECK(cols.size() == static_cast<std::size_t>((n + 1) * d));
      const std::int64_t want = std::min<std::int64_t>(d * n + 1, binomial(n + d, d));
      CHECK(tangent_rank(p) == want);
    }
  CHECK_THROWS_AS(ChowPoint({unit(2, 0), unit(3, 0)}), Error);
  CHECK_THROWS_AS(ChowPoint(std::vector<LinearForm>{}), Error);
}

TEST_CASE("Terracini oracle examples") {
  CHECK(terracini_rank({2, 4, 2}, 1, F) == 14);
  CHECK(terracini_rank({3, 2, 2}, 1, F) == 10);
  for (int n = 1; n <= 6; ++n) CHECK(terracini_rank({1, n, 1}, 3, F) == n + 1);
  CHECK_THROWS_AS(terracini_rank({3, 90, 1}, 1, F), Error);
}

TEST_CASE("quadric Chow varieties are defective as tabulated") {
  CHECK(chow_quadric_dim(4, 2) == 13);
  CHECK(chow_quadric_dim(6, 2) == 21);
  CHECK(chow_quadric_dim(6, 3) == 26);
  CHECK_THROWS_AS(chow_quadric_dim(3, 1), Error);
  CHECK_THROWS_AS(chow_quadric_dim(6, 4), Error);
  CHECK_THROWS_AS(chow_quadric_dim(6, 1), Error);
  for (int n = 4; n <= 8; ++n)
    for (int s = 2; s <= n / 2; ++s) {
      const std::int64_t r = terracini_rank({2, n, s}, 1000 + n * 10 + s, F);
      CHECK(r == chow_quadric_dim(n, s) + 1);
      CHECK(r == binomial(n + 2, 2) - binomial(n - 2 * s + 2, 2));
      CHECK(classify_oracle({2, n, s}, r) == OracleClass::MatchesKnownDefective);
    }
}

TEST_CASE("plane cubics are nondefective") {
  for (int s = 1; s <= 4; ++s) {
    const SecantProblem p{3, 2, s};
    const std::int64_t r = terracini_rank(p, 77, F);
    CHECK(r == expdim_secant(p) + 1);
    CHECK(classify_oracle(p, r) == OracleClass::NondefectiveEvidence);
  }
}

TEST_CASE("oracle bounds, monotonicity and thread independence") {
  for (int d = 2; d <= 4; ++d)
    for (int n = 2; n <= 4; ++n) {
      std::int64_t prev = 0;
      for (int s = 1; s <= 6; ++s) {
        const SecantProblem p{d, n, s};
        const std::int64_t r = terracini_rank(p, 123, F);
        CHECK(r <= std::min<std::int64_t>(s * (d * n + 1), binomial(n + d, d)));
        CHECK(r >= prev);
        prev = r;
      }
    }
  CHECK(terracini_rank({3, 4, 5}, 8, F, 1) == terracini_rank({3, 4, 5}, 8, F, 3));
}

TEST_CASE("classification") {
  CHECK(classify_oracle({3, 3, 2}, 20) == OracleClass::NondefectiveEvidence);
  CHECK(classify_oracle({3, 3, 2}, 19) == OracleClass::Inconclusive);
  CHECK(classify_oracle({2, 4, 2}, 15) == OracleClass::NondefectiveEvidence);
  CHECK(classify_oracle({2, 4, 2}, 13) == OracleClass::Inconclusive);
  CHECK(std::string(to_string(OracleClass::MatchesKnownDefective)) == "MATCHES-KNOWN-DEFECTIVE");
  CHECK(std::string(to_string(OracleClass::NondefectiveEvidence)) == "NONDEFECTIVE-EVIDENCE");
  CHECK(std::string(to_string(OracleClass::Inconclusive)) == "INCONCLUSIVE");
}
