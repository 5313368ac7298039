#include <doctest.h>

#include "chowdefect/error.hpp"
#include "chowdefect/finite_calculus.hpp"

using namespace chowdefect;

namespace {

IntFunction n_fn = [](std::int64_t t) { return binomial(t + 3, 3); };

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(85, 3) == 98770);
  CHECK(binomial(8, 3) == 56);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(binomial(-2, 2) == 0);
  CHECK(binomial(62, 31) == 465428353255261088LL);
  CHECK_THROWS_AS(binomial(200, 100), Error);
}

TEST_CASE("proof functions evaluate to the tabulated values") {
  const auto pf = make_proof_functions();
  CHECK(pf.s1(2) == 1);
  CHECK(pf.s1(5) == 3);
  CHECK(pf.s1(0) == 0);
  CHECK(pf.s1(32) == 67);
  CHECK(pf.s2(5) == 4);
  CHECK(pf.s2(82) == 400);
  const auto a = proof_a_table();
  CHECK(a[0] == 0);
  CHECK(a[2] == 4);
  CHECK(a[13] == -13);
  CHECK(a[26] == 7);
  CHECK(pf.s1.period() == 27);
  CHECK(pf.s1.degree() == 2);
  CHECK(pf.s1.leading_coefficient() == Rational(1, 18));
}

TEST_CASE("s2 is the ceiling of N/m and s2 - s1 = 1") {
  const auto pf = make_proof_functions();
  for (std::int64_t t = 1; t <= 200; ++t) {
    const std::int64_t n = binomial(t + 3, 3), m = 3 * t + 1;
    CHECK(pf.s2(t) == (n + m - 1) / m);
    CHECK(pf.s2(t) - pf.s1(t) == 1);
  }
}

TEST_CASE("quasipolynomial construction and integrality") {
  CHECK(Quasipolynomial::constant(7)(-3) == 7);
  CHECK(Quasipolynomial::constant(7)(1000) == 7);
  const auto half = Quasipolynomial::polynomial({0, Rational(1, 2)});
  CHECK(half(4) == 2);
  try {
    half(3);
    FAIL("expected NonIntegralValue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegralValue);
  }
  // residues with different leading coefficients are rejected
  CHECK_THROWS_AS(Quasipolynomial({{0, 1}, {0, 2}}), Error);
  CHECK_THROWS_AS(Quasipolynomial(std::vector<std::vector<Rational>>{}), Error);
  CHECK(Quasipolynomial::constant(3).plus(4)(9) == 7);
}

TEST_CASE("backward differences") {
  const IntFunction id = [](std::int64_t t) { return t; };
  for (std::int64_t t = -5; t < 5; ++t) CHECK(backward_diff(id, 1, t, 1) == 1);
  CHECK(backward_diff(id, 0, 17, 3) == 17);
  CHECK_THROWS_AS(StepDifference(0, 1), Error);
  CHECK_THROWS_AS(StepDifference(2, -1), Error);
  const StepDifference op(27, 2);
  const auto s1 = make_proof_functions().s1.as_function();
  for (std::int64_t t = -60; t <= 260; ++t) {
    CHECK(backward_diff(s1, 3, t, 27) == 0);
    CHECK(backward_diff(s1, 2, t, 27) == 81);
    CHECK(backward_diff(s1, op, t) == 81);
  }
}

TEST_CASE("Newton backward formula") {
  const IntFunction sq = [](std::int64_t t) { return t * t; };
  CHECK(newton_reconstruct(sq, 2, 13, 5) == 169);
  CHECK(newton_reconstruct(n_fn, 3, 82, 27) == 98770);
  const auto pf = make_proof_functions();
  const auto s1 = pf.s1.as_function();
  CHECK(newton_reconstruct(s1, 3, 100, 27) == pf.s1(100));
  for (int n = 0; n <= 4; ++n)
    for (std::int64_t t = -30; t <= 150; t += 7) {
      CHECK(newton_reconstruct(s1, n, t, 27) == pf.s1(t));
      CHECK(newton_reconstruct(n_fn, n, t, 27) == n_fn(t));
    }
}

TEST_CASE("power rule for the cubic N(t)") {
  // LC(N) * l^3 * 3! = 27^3. The binomial is 0 below t = -3, so the
  // polynomial identity only holds once every shifted argument is >= -3.
  const std::int64_t top = 27 * 27 * 27;
  for (std::int64_t t = 4 * 27 - 3; t <= 300; ++t) {
    CHECK(backward_diff(n_fn, 3, t, 27) == top);
    CHECK(backward_diff(n_fn, 4, t, 27) == 0);
  }
}

TEST_CASE("linearity and composition of differences") {
  const auto s1 = make_proof_functions().s1.as_function();
  const IntFunction combo = [&](std::int64_t t) { return 3 * s1(t) - 2 * n_fn(t); };
  for (std::int64_t t = 0; t <= 120; t += 5)
    for (int i = 0; i <= 3; ++i) {
      CHECK(backward_diff(combo, i, t, 27) == 3 * backward_diff(s1, i, t, 27) - 2 * backward_diff(n_fn, i, t, 27));
      for (int j = 0; j + i <= 4; ++j) {
        const IntFunction inner = [&, j](std::int64_t u) { return backward_diff(n_fn, j, u, 27); };
        CHECK(backward_diff(inner, i, t, 27) == backward_diff(n_fn, i + j, t, 27));
      }
    }
}
