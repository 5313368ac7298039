#include <doctest.h>

#include <chrono>
#include <set>

#include "chowdefect/error.hpp"
#include "chowdefect/selfcheck.hpp"

using namespace chowdefect;

TEST_CASE("stock tables pass every identity") {
  const auto t0 = std::chrono::steady_clock::now();
  const SelfcheckReport r = run_selfcheck();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(r.ok());
  CHECK(secs < 5.0);
  std::set<std::string> seen;
  for (const auto& t : r.tallies) {
    seen.insert(t.identity);
    CHECK(t.failures == 0);
    CHECK(t.checks > 0);
  }
  for (const char* id :
       {"newton", "power-rule", "point-count", "s2-ceiling", "grassmann", "equiabundance", "top-difference"})
    CHECK(seen.count(id) == 1);
}

TEST_CASE("quick scan") {
  SelfcheckOptions o;
  o.t_max = 60;
  const auto r = run_selfcheck(o);
  CHECK(r.ok());
  for (const auto& t : r.tallies)
    if (t.identity == "equiabundance") CHECK(t.checks == 0);
  o.t_max = 0;
  CHECK_THROWS_AS(run_selfcheck(o), Error);
}

TEST_CASE("a mutated a-table is caught") {
  auto a = proof_a_table();
  a[13] = -12;
  SelfcheckOptions o;
  o.a_table = a;
  const auto r = run_selfcheck(o);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.violations.empty());

  // a shift by 27 keeps s integral but breaks the ceiling property
  a = proof_a_table();
  a[5] += 27;
  o.a_table = a;
  const auto r2 = run_selfcheck(o);
  CHECK_FALSE(r2.ok());
  bool ceiling = false;
  for (const auto& v : r2.violations) ceiling |= v.identity == "s2-ceiling";
  CHECK(ceiling);
}
