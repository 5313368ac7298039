#include <doctest.h>

#include <functional>
#include <set>

#include "chowdefect/error.hpp"
#include "chowdefect/sampling.hpp"

using namespace chowdefect;

namespace {

const PrimeField F(8191);

std::vector<Coeff> coeffs(const LinearForm& f) { return {f.coeffs().begin(), f.coeffs().end()}; }

}  // namespace

TEST_CASE("splitmix64 reference values") {
  std::uint64_t s = 0;
  CHECK(splitmix64_next(s) == 0xe220a8397b1dcdafULL);
  CHECK(splitmix64_next(s) == 0x6e789e6aa1b965f4ULL);
  CHECK(splitmix64_next(s) == 0x06c45d188009454fULL);
}

TEST_CASE("labels print and parse") {
  const FormLabel l{"f", {2, 0, 26}};
  CHECK(l.text() == "f_{2,0,26}");
  CHECK(FormLabel::parse("f_{2,0,26}") == l);
  CHECK(FormLabel::parse("l_{0,3}").role == "l");
  for (const char* bad : {"l", "l_{}", "_{1}", "l_{1,}", "l_{a}", "l_{1", "l_{-1}"})
    CHECK_THROWS_AS(FormLabel::parse(bad), Error);
  CHECK(FormLabel{"g", {0, 1}} < FormLabel{"g", {0, 2}});
}

TEST_CASE("attempt seeds") {
  CHECK(derive_attempt_seed(99, 0) == 99);
  std::set<std::uint64_t> seen{99};
  for (int a = 1; a < 50; ++a) CHECK(seen.insert(derive_attempt_seed(99, a)).second);
  CHECK(derive_attempt_seed(99, 3) == derive_attempt_seed(99, 3));
}

TEST_CASE("keyed draws do not depend on draw order") {
  KeyedSampler a(1452337571, F), b(1452337571, F);
  const FormLabel x{"l", {0, 0}}, y{"l", {2, 4}};
  const auto ax = coeffs(a.draw(x, 4, 0, 0));
  const auto ay = coeffs(a.draw(y, 4, 0, 0));
  const auto by = coeffs(b.draw(y, 4, 0, 0));
  const auto bx = coeffs(b.draw(x, 4, 0, 0));
  CHECK(ax == bx);
  CHECK(ay == by);
  CHECK(ax != ay);
  KeyedSampler c(1452337572, F);
  CHECK(coeffs(c.draw(x, 4, 0, 0)) != ax);
  for (Coeff v : ax) CHECK(v < 8191);
}

TEST_CASE("restricted draws vanish on the block") {
  KeyedSampler s(5, F);
  for (std::int64_t p = 0; p < 50; ++p) {
    const auto c = coeffs(s.draw(FormLabel{"k", {p, 1}}, 60, 27, 54));
    for (int v = 27; v < 54; ++v) CHECK(c[static_cast<std::size_t>(v)] == 0);
  }
  CHECK_THROWS_AS(s.draw(FormLabel{"k", {0}}, 3, 0, 3), Error);
  CHECK_THROWS_AS(s.draw(FormLabel{"k", {0}}, 3, 2, 1), Error);
}

TEST_CASE("zero forms are redrawn and counted") {
  // over F_2 with one free coordinate half the substreams start with a zero
  const PrimeField two(2);
  KeyedSampler s(17, two);
  for (std::int64_t p = 0; p < 64; ++p) {
    const auto c = coeffs(s.draw(FormLabel{"l", {p}}, 3, 1, 3));
    CHECK(c[0] == 1);
  }
  CHECK(s.resamples() > 0);
}

TEST_CASE("replay source") {
  const std::vector<RecordedForm> forms{{{"l", {0, 0}}, {1, 2, 3, 4}}, {{"k", {0, 0}}, {5, 0, 0, 6}}};
  ReplaySource r(forms, F);
  CHECK(coeffs(r.draw(FormLabel{"l", {0, 0}}, 4, 0, 0)) == std::vector<Coeff>{1, 2, 3, 4});
  CHECK_THROWS_AS(r.check_all_used(), Error);
  CHECK(coeffs(r.draw(FormLabel{"k", {0, 0}}, 4, 1, 3)) == std::vector<Coeff>{5, 0, 0, 6});
  r.check_all_used();

  ReplaySource q(forms, F);
  auto code = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code([&] { q.draw(FormLabel{"m", {0, 0}}, 4, 0, 0); }) == ErrorCode::DimensionMismatch);
  CHECK(code([&] { q.draw(FormLabel{"l", {0, 0}}, 5, 0, 0); }) == ErrorCode::DimensionMismatch);
  CHECK(code([&] { q.draw(FormLabel{"l", {0, 0}}, 4, 1, 2); }) == ErrorCode::DimensionMismatch);
  CHECK(code([&] { ReplaySource(std::vector<RecordedForm>{{{"l", {0}}, {8191}}}, F); }) ==
        ErrorCode::InvariantViolation);
  CHECK(code([&] { ReplaySource(std::vector<RecordedForm>{forms[0], forms[0]}, F); }) ==
        ErrorCode::DimensionMismatch);
}
