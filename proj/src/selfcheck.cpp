#include "chowdefect/selfcheck.hpp"

#include <functional>
#include <map>

#include "chowdefect/error.hpp"

namespace chowdefect {

namespace {

class Recorder {
 public:
  explicit Recorder(SelfcheckReport& r) : r_(r) {}

  // Runs one check; a thrown Error counts as a failure.
  void check(const std::string& identity, std::int64_t t, int i, const std::function<std::string()>& body) {
    auto& tally = tally_for(identity);
    ++tally.checks;
    std::string detail;
    try {
      detail = body();
    } catch (const Error& e) {
      detail = e.what();
    }
    if (!detail.empty()) {
      ++tally.failures;
      r_.violations.push_back({identity, t, i, detail});
    }
  }

  void absorb(const std::vector<ArithmeticViolation>& vs, const std::map<std::string, std::int64_t>& checks) {
    for (const auto& [identity, n] : checks) tally_for(identity).checks += n;
    for (const auto& v : vs) {
      ++tally_for(v.identity).failures;
      r_.violations.push_back(v);
    }
  }

 private:
  SelfcheckReport::Tally& tally_for(const std::string& identity) {
    auto it = index_.find(identity);
    if (it == index_.end()) {
      it = index_.emplace(identity, r_.tallies.size()).first;
      r_.tallies.push_back({identity, 0, 0});
    }
    return r_.tallies[it->second];
  }

  SelfcheckReport& r_;
  std::map<std::string, std::size_t> index_;
};

std::string mismatch(const char* what, std::int64_t got, std::int64_t want) {
  if (got == want) return {};
  return std::string(what) + ": " + std::to_string(got) + " != " + std::to_string(want);
}

void scan(const LatticeConfig& c, std::int64_t t_max, Recorder& rec) {
  const std::string fam = to_string(c.family);
  const IntFunction n_fn = [&c](std::int64_t u) { return c.N(u); };
  for (std::int64_t t = 1; t <= t_max; ++t) {
    rec.check("newton", t, c.top_order, [&] {
      return mismatch("N", newton_reconstruct(n_fn, c.top_order, t, c.step), c.N(t));
    });
    for (Branch b : {Branch::S1, Branch::S2}) {
      const IntFunction s = c.s_fn(b);
      const std::string tag = fam + " " + to_string(b);
      rec.check("newton", t, c.top_order, [&] {
        return mismatch(tag.c_str(), newton_reconstruct(s, c.top_order, t, c.step), s(t));
      });
      rec.check("power-rule", t, 3, [&] { return mismatch(tag.c_str(), backward_diff(s, 3, t, c.step), 0); });
      rec.check("power-rule", t, 2, [&] { return mismatch(tag.c_str(), backward_diff(s, 2, t, c.step), 81); });
      rec.check("point-count", t, c.order(t), [&] {
        point_plan(c, t, b);
        return std::string();
      });
    }
    rec.check("s2-ceiling", t, 0, [&] {
      const std::int64_t n = c.N(t), m = c.m(t);
      return mismatch(fam.c_str(), c.s_fn(Branch::S2)(t), (n + m - 1) / m);
    });
  }
  std::map<std::string, std::int64_t> checks;
  for (std::int64_t t = 1; t <= t_max; ++t) {
    checks["grassmann"] += 2 * c.order(t);
    if (t >= c.t0) {
      checks["equiabundance"] += 2;
      checks["top-difference"] += 1;
    }
  }
  rec.absorb(induction_arithmetic_check(c, 1, t_max), checks);
}

}  // namespace

SelfcheckReport run_selfcheck(const SelfcheckOptions& opts) {
  require(opts.t_max >= 1, ErrorCode::InvalidArgument, "t_max must be positive");
  SelfcheckReport report;
  Recorder rec(report);
  for (Family f : {Family::Quaternary, Family::Cubics}) {
    std::optional<LatticeConfig> c;
    rec.check("a-table", 0, 0, [&] {
      c = opts.a_table ? LatticeConfig::with_a_table(f, *opts.a_table) : LatticeConfig::proof(f);
      return std::string();
    });
    if (c) scan(*c, opts.t_max, rec);
  }
  return report;
}

}  // namespace chowdefect
