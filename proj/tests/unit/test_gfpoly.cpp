#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <random>

#include "chowdefect/error.hpp"
#include "chowdefect/finite_calculus.hpp"
#include "chowdefect/gfpoly.hpp"

using namespace chowdefect;

namespace {

const PrimeField F(8191);

LinearForm random_form(std::mt19937_64& rng, int n, const PrimeField& f = F) {
  std::uniform_int_distribution<std::uint32_t> u(0, f.modulus() - 1);
  for (;;) {
    std::vector<Coeff> c(static_cast<std::size_t>(n + 1));
    bool nz = false;
    for (auto& x : c) nz |= (x = static_cast<Coeff>(u(rng))) != 0;
    if (nz) return LinearForm(std::move(c), f);
  }
}

LinearForm unit(int n, int j) {
  std::vector<Coeff> c(static_cast<std::size_t>(n + 1), 0);
  c[static_cast<std::size_t>(j)] = 1;
  return LinearForm(std::move(c), F);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("prime field") {
  CHECK(is_prime(8191));
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(8193));
  CHECK(code_of([] { PrimeField(8192); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { PrimeField(32771); }) == ErrorCode::InvalidArgument);
  CHECK(PrimeField(32749).modulus() == 32749);
  for (Coeff a = 1; a < 200; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
  CHECK(F.neg(1) == 8190);
  CHECK(F.sub(0, 1) == 8190);
}

TEST_CASE("linear forms are never zero") {
  CHECK_THROWS_AS(LinearForm({0, 0, 0}, F), Error);
  CHECK_THROWS_AS(LinearForm({8191, 1}, F), Error);
}

TEST_CASE("monomial ranking examples") {
  CHECK(monomial_rank(std::vector<int>{0, 0, 0}, 3) == 1);
  CHECK(monomial_rank(std::vector<int>{3, 3, 3}, 3) == 20);
  CHECK(monomial_rank(std::vector<int>{0, 0, 1}, 3) == 2);
  CHECK(monomial_rank(std::vector<int>{}, 3) == 1);
  CHECK(monomial_unrank(1, 3, 3) == std::vector<int>{0, 0, 0});
  CHECK(monomial_unrank(20, 3, 3) == std::vector<int>{3, 3, 3});
  CHECK(monomial_unrank(2, 3, 3) == std::vector<int>{0, 0, 1});
  CHECK(code_of([] { monomial_rank(std::vector<int>{1, 0}, 3); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { monomial_rank(std::vector<int>{0, 4}, 3); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { monomial_unrank(0, 3, 3); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { monomial_unrank(21, 3, 3); }) == ErrorCode::IndexOutOfRange);
  CHECK(basis_size(3, 82) == 98770);
}

TEST_CASE("rank and unrank are inverse, increasing bijections") {
  for (int n = 0; n <= 6; ++n)
    for (int d = 0; d <= 8; ++d) {
      const std::int64_t size = basis_size(n, d);
      std::vector<int> prev;
      for (std::int64_t z = 1; z <= size; ++z) {
        const auto m = monomial_unrank(z, n, d);
        REQUIRE(static_cast<int>(m.size()) == d);
        CHECK(std::is_sorted(m.begin(), m.end()));
        CHECK(monomial_rank(m, n) == z);
        if (z > 1) CHECK(std::lexicographical_compare(prev.begin(), prev.end(), m.begin(), m.end()));
        std::vector<int> e(static_cast<std::size_t>(n + 1), 0);
        for (int i : m) ++e[static_cast<std::size_t>(i)];
        CHECK(exponent_position(e) == z - 1);
        prev = m;
      }
    }
}

TEST_CASE("mul_linear examples") {
  const LinearForm s({1, 1}, F);
  const HomPoly sq = mul_linear(HomPoly::from_linear(s), s, F);
  CHECK(sq.coeffs()[0] == 1);
  CHECK(sq.coeffs()[1] == 2);
  CHECK(sq.coeffs()[2] == 1);

  const HomPoly p = mul_linear(HomPoly::from_linear(unit(3, 0)), unit(3, 2), F);
  const std::int64_t z = monomial_rank(std::vector<int>{0, 2}, 3);
  for (std::size_t q = 0; q < p.size(); ++q) CHECK(p[q] == (static_cast<std::int64_t>(q) + 1 == z ? 1 : 0));
  CHECK(code_of([&] { mul_linear(HomPoly::one(2), unit(3, 0), F); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("products of linear forms") {
  {
    const std::vector<LinearForm> xs(3, unit(3, 0));
    const HomPoly p = product_of_linear_forms(xs, F);
    CHECK(p.size() == 20);
    CHECK(p[0] == 1);
    for (std::size_t q = 1; q < p.size(); ++q) CHECK(p[q] == 0);
  }
  {
    const std::vector<LinearForm> one{unit(2, 1)};
    CHECK(naive_product_oracle(one, F) == HomPoly::from_linear(unit(2, 1)));
  }
  {
    const std::vector<LinearForm> ds{LinearForm({1, 1}, F), LinearForm({1, 8190}, F)};
    for (const HomPoly& p : {product_of_linear_forms(ds, F), naive_product_oracle(ds, F)}) {
      CHECK(p[0] == 1);
      CHECK(p[1] == 0);
      CHECK(p[2] == 8190);
    }
  }
  CHECK(code_of([] { product_of_linear_forms(std::vector<LinearForm>{}, F); }) == ErrorCode::EmptyProduct);
  CHECK(code_of([] { product_of_linear_forms(std::vector<LinearForm>{unit(2, 0), unit(3, 0)}, F); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { naive_product_oracle(std::vector<LinearForm>(12, unit(3, 0)), F); }) ==
        ErrorCode::BudgetExceeded);
}

TEST_CASE("kernel agrees with the tensor oracle") {
  std::mt19937_64 rng(20240607);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng() % 4);
    const int d = 1 + static_cast<int>(rng() % 6);
    std::vector<LinearForm> fs;
    for (int q = 0; q < d; ++q) fs.push_back(random_form(rng, n));
    const HomPoly fast = product_of_linear_forms(fs, F);
    CHECK(fast.size() == static_cast<std::size_t>(binomial(n + d, d)));
    CHECK(fast == naive_product_oracle(fs, F));
  }
  // five forms in four variables, and a small prime with lots of cancellation
  const PrimeField small(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<LinearForm> fs, gs;
    for (int q = 0; q < 5; ++q) fs.push_back(random_form(rng, 3));
    for (int q = 0; q < 6; ++q) gs.push_back(random_form(rng, 2, small));
    CHECK(product_of_linear_forms(fs, F) == naive_product_oracle(fs, F));
    CHECK(product_of_linear_forms(gs, small) == naive_product_oracle(gs, small));
  }
}

TEST_CASE("the product does not depend on the order of the factors") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<LinearForm> fs;
    for (int q = 0; q < 12; ++q) fs.push_back(random_form(rng, 3));
    const HomPoly ref = product_of_linear_forms(fs, F);
    for (int perm = 0; perm < 5; ++perm) {
      std::shuffle(fs.begin(), fs.end(), rng);
      const HomPoly p = product_of_linear_forms(fs, F);
      CHECK(p == ref);
      for (std::size_t q = 0; q < p.size(); ++q) REQUIRE(p[q] < 8191);
    }
  }
}

TEST_CASE("82 forms in four variables") {
  std::mt19937_64 rng(82);
  std::vector<LinearForm> fs;
  for (int q = 0; q < 82; ++q) fs.push_back(random_form(rng, 3));
  const auto t0 = std::chrono::steady_clock::now();
  const HomPoly p = product_of_linear_forms(fs, F);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(p.size() == 98770);
  CHECK(p.degree() == 82);
  CHECK(secs < 1.5);
}

TEST_CASE("variable and monomial multiplication") {
  std::mt19937_64 rng(3);
  std::vector<LinearForm> fs;
  for (int q = 0; q < 4; ++q) fs.push_back(random_form(rng, 3));
  const HomPoly p = product_of_linear_forms(fs, F);
  for (int j = 0; j <= 3; ++j) CHECK(mul_variable(p, j) == mul_linear(p, unit(3, j), F));
  const std::vector<int> u{2, 0, 1, 0};
  HomPoly expect = mul_variable(mul_variable(mul_variable(p, 0), 0), 2);
  CHECK(mul_monomial(p, u) == expect);
}

TEST_CASE("leave-one-out products") {
  std::mt19937_64 rng(11);
  std::vector<LinearForm> fs;
  for (int q = 0; q < 7; ++q) fs.push_back(random_form(rng, 3));
  const auto base = HomPoly::from_linear(random_form(rng, 3));
  const auto outs = leave_one_out_products(base, fs, F);
  REQUIRE(outs.size() == fs.size());
  for (std::size_t b = 0; b < fs.size(); ++b) {
    HomPoly ref = base;
    for (std::size_t g = 0; g < fs.size(); ++g)
      if (g != b) ref = mul_linear(ref, fs[g], F);
    CHECK(outs[b] == ref);
  }
}
