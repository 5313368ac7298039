#include <doctest.h>

#include <fstream>
#include <sstream>

#include "chowdefect/certificate.hpp"
#include "chowdefect/error.hpp"

using namespace chowdefect;

namespace {

const LatticeConfig Q = LatticeConfig::proof(Family::Quaternary);
const LatticeConfig C = LatticeConfig::proof(Family::Cubics);

// The t = 5 certificate as printed in the literature.
const char* kPrinted =
    "Using random seed: 1452337571\n"
    "Need a 56 x 60 matrix.\n"
    "l_{0,0} = [7354 6394  862 7318]\n"
    "l_{0,1} = [6008 7131 6458 3996]\n"
    "l_{0,2} = [ 956 1407 7361  119]\n"
    "l_{0,3} = [1659 1730 3153 6358]\n"
    "l_{0,4} = [1861 3230 4474 6784]\n"
    "l_{1,0} = [2581 5927 3361 5265]\n"
    "l_{1,1} = [6076 3508  373 2488]\n"
    "l_{1,2} = [4744 1652 3436  940]\n"
    "l_{1,3} = [  65 1209 4285 6640]\n"
    "l_{1,4} = [7483 5618 2000 4187]\n"
    "l_{2,0} = [4138 6897 4991 5908]\n"
    "l_{2,1} = [7470 2404 1374 7439]\n"
    "l_{2,2} = [2454 6397 6616 4915]\n"
    "l_{2,3} = [3309 7016 1544 7528]\n"
    "l_{2,4} = [2433  571 1439  458]\n"
    "Constructed T in 0.001s.\n"
    "Computed the rank of the 56 x 60 matrix T over F_8191 in 0.001s.\n"
    "Found 48 vs. 48 expected.\n"
    "T_0(3, 5, 27) is TRUE (SUBABUNDANT)\n";

VerifyOptions seeded(std::uint64_t seed) {
  VerifyOptions o;
  o.seed = seed;
  return o;
}

std::vector<std::string> lines_of(const std::string& text, bool drop_timing) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);)
    if (!drop_timing || !is_timing_line(l)) out.push_back(l);
  return out;
}

std::string join(const std::vector<std::string>& ls) {
  std::string s;
  for (const auto& l : ls) s += l + "\n";
  return s;
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

TEST_CASE("the printed certificate parses and round-trips") {
  const Certificate c = parse_certificate(kPrinted);
  CHECK(c.seed == 1452337571);
  CHECK(c.rows == 56);
  CHECK(c.cols == 60);
  CHECK(c.prime == 8191);
  REQUIRE(c.forms.size() == 15);
  CHECK(c.forms[0].label.text() == "l_{0,0}");
  CHECK(c.forms[0].coeffs == std::vector<Coeff>{7354, 6394, 862, 7318});
  CHECK(c.forms[14].label.text() == "l_{2,4}");
  for (const auto& f : c.forms) CHECK(f.coeffs.size() == 4);
  CHECK(c.found == 48);
  CHECK(c.expected == 48);
  CHECK(c.order == 0);
  CHECK(c.t == 5);
  CHECK(c.step == 27);
  CHECK(c.verdict == Verdict::True);
  CHECK(c.abundance == Abundance::Sub);
  CHECK(c.trailer.empty());
  CHECK(emit_text(c) == kPrinted);
}

TEST_CASE("the printed forms rebuild to rank 48") {
  const ReverifyResult r = reverify(parse_certificate(kPrinted));
  CHECK(r.confirmed);
  CHECK(r.family == Family::Quaternary);
  CHECK(r.branch == Branch::S1);
  CHECK(r.outcome.found == 48);
  CHECK(r.mismatches.empty());
}

TEST_CASE("emitted certificates follow the template") {
  const auto o = verify_statement(Q, 5, Branch::S1, seeded(1452337571));
  const std::string text = emit_text(o);
  const auto ls = lines_of(text, false);
  REQUIRE(ls.size() == 2 + 15 + 4 + 9);
  CHECK(ls[0] == "Using random seed: 1452337571");
  CHECK(ls[1] == "Need a 56 x 60 matrix.");
  CHECK(ls[2].rfind("l_{0,0} = [", 0) == 0);
  CHECK(ls[2].size() == std::string("l_{0,0} = [1234 1234 1234 1234]").size());
  CHECK(ls[17].rfind("Constructed T in ", 0) == 0);
  CHECK(ls[18].rfind("Computed the rank of the 56 x 60 matrix T over F_8191 in ", 0) == 0);
  CHECK(ls[19] == "Found 48 vs. 48 expected.");
  CHECK(ls[20] == "T_0(3, 5, 27) is TRUE (SUBABUNDANT)");
  CHECK(ls[21] == "substream=splitmix64-keyed-v1");
  CHECK(ls[22] == "family=quaternary");
  CHECK(ls[23] == "branch=s1");
  CHECK(ls[24] == "master_seed=1452337571");
  CHECK(ls[29].rfind("matrix_digest=", 0) == 0);

  const Certificate c = parse_certificate(text);
  CHECK(emit_text(c) == text);
  CHECK(c.forms.size() == o.forms.size());
  for (std::size_t q = 0; q < c.forms.size(); ++q) {
    CHECK(c.forms[q].label == o.forms[q].label);
    CHECK(c.forms[q].coeffs == o.forms[q].coeffs);
  }
  CHECK(c.trailer_value("full_rows") == "56");
}

TEST_CASE("unverified and empty statements") {
  VerificationOutcome o = verify_statement(Q, 5, Branch::S1, seeded(3));
  o.found = 47;
  o.verdict = Verdict::Unverified;
  const auto ls = lines_of(emit_text(o), false);
  CHECK(ls[19] == "Found 47 vs. 48 expected.");
  CHECK(ls[20] == "T_0(3, 5, 27) is UNVERIFIED (SUBABUNDANT)");
  const Certificate c = parse_certificate(emit_text(o));
  CHECK(c.verdict == Verdict::Unverified);
  CHECK_FALSE(reverify(c).confirmed);

  const auto z = verify_statement(C, 1, Branch::S1, seeded(3));
  const auto zl = lines_of(emit_text(z), false);
  CHECK(zl[1] == "Need a 4 x 0 matrix.");
  CHECK(zl[4] == "Found 0 vs. 0 expected.");
  CHECK(reverify(parse_certificate(emit_text(z))).confirmed);
}

TEST_CASE("certificates are deterministic apart from timing lines") {
  for (auto [cfg, t, b] : {std::tuple{&Q, 9, Branch::S2}, std::tuple{&C, 28, Branch::S1}}) {
    const auto one = emit_text(verify_statement(*cfg, t, b, seeded(77)));
    const auto two = emit_text(verify_statement(*cfg, t, b, seeded(77)));
    CHECK(lines_of(one, true) == lines_of(two, true));
    const auto other = emit_text(verify_statement(*cfg, t, b, seeded(78)));
    CHECK(lines_of(one, true) != lines_of(other, true));
  }
}

TEST_CASE("reverification of fresh certificates") {
  for (auto [cfg, t, b] : {std::tuple{&Q, 7, Branch::S2}, std::tuple{&C, 28, Branch::S2}, std::tuple{&C, 6, Branch::S1}}) {
    const std::string text = emit_text(verify_statement(*cfg, t, b, seeded(5)));
    const auto r = reverify(parse_certificate(text));
    CHECK(r.confirmed);
    CHECK(r.family == cfg->family);
    CHECK(r.branch == b);

    // without the trailer, family and branch are inferred
    auto ls = lines_of(text, false);
    ls.resize(ls.size() - 9);
    const auto bare = reverify(parse_certificate(join(ls)));
    CHECK(bare.confirmed);
    CHECK(bare.family == cfg->family);
    CHECK(bare.branch == b);
  }
}

TEST_CASE("tampering is detected") {
  const std::string text = emit_text(verify_statement(Q, 6, Branch::S1, seeded(6)));
  Certificate c = parse_certificate(text);
  c.forms[3].coeffs[1] = static_cast<Coeff>((c.forms[3].coeffs[1] + 1) % 8191);
  const auto r = reverify(parse_certificate(emit_text(c)));
  CHECK_FALSE(r.confirmed);
  CHECK_FALSE(r.mismatches.empty());

  auto ls = lines_of(text, false);
  for (auto& l : ls)
    if (l.rfind("Found ", 0) == 0) l = "Found 70 vs. 70 expected.";
  CHECK_FALSE(reverify(parse_certificate(join(ls))).confirmed);

  // a dropped form contradicts the point plan
  ls = lines_of(text, false);
  ls.erase(ls.begin() + 2);
  const Certificate dropped = parse_certificate(join(ls));
  CHECK(code_of([&] { reverify(dropped); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("parse errors") {
  const auto ls = lines_of(kPrinted, false);
  for (std::size_t keep : {0u, 1u, 5u, 17u, 18u, 19u}) {
    std::vector<std::string> head(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(keep));
    try {
      parse_certificate(join(head));
      FAIL("truncated certificate parsed");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("line " + std::to_string(keep + 1)) != std::string::npos);
    }
  }
  std::string big = kPrinted;
  big.replace(big.find("7354"), 4, "8191");
  CHECK(code_of([&] { parse_certificate(big); }) == ErrorCode::InvariantViolation);
  std::string junk = kPrinted;
  junk.replace(junk.find("l_{1,1}"), 7, "l_{1;1}");
  CHECK(code_of([&] { parse_certificate(junk); }) == ErrorCode::ParseError);
  std::string shape = kPrinted;
  shape.replace(shape.find("the 56 x 60"), 11, "the 56 x 61");
  CHECK(code_of([&] { parse_certificate(shape); }) == ErrorCode::ParseError);
}
