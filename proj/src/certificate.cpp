#include "chowdefect/certificate.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "chowdefect/error.hpp"

namespace chowdefect {

namespace {

int coeff_width(std::uint32_t prime) { return static_cast<int>(std::to_string(prime - 1).size()); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::string timing(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

std::string form_line(const RecordedForm& f, int width) {
  std::string out = f.label.text() + " = [";
  char buf[16];
  for (std::size_t q = 0; q < f.coeffs.size(); ++q) {
    std::snprintf(buf, sizeof buf, "%*u", width, static_cast<unsigned>(f.coeffs[q]));
    if (q) out += ' ';
    out += buf;
  }
  return out + "]";
}

std::string shape(std::int64_t r, std::int64_t c) { return std::to_string(r) + " x " + std::to_string(c); }

[[noreturn]] void parse_fail(std::size_t line, const std::string& why) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + why);
}

// Consumes `lit` at the front of s.
bool eat(std::string_view& s, std::string_view lit) {
  if (s.substr(0, lit.size()) != lit) return false;
  s.remove_prefix(lit.size());
  return true;
}

template <class Int>
bool eat_int(std::string_view& s, Int& v) {
  std::size_t q = 0;
  while (q < s.size() && s[q] >= '0' && s[q] <= '9') ++q;
  if (q == 0 || q > 19) return false;
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < q; ++i) acc = acc * 10 + static_cast<std::uint64_t>(s[i] - '0');
  v = static_cast<Int>(acc);
  s.remove_prefix(q);
  return true;
}

bool parse_shape(std::string_view& s, std::int64_t& r, std::int64_t& c) {
  return eat_int(s, r) && eat(s, " x ") && eat_int(s, c);
}

}  // namespace

std::string Certificate::trailer_value(const std::string& key) const {
  for (const auto& [k, v] : trailer)
    if (k == key) return v;
  return {};
}

bool is_timing_line(const std::string& line) {
  return line.rfind("Constructed T in ", 0) == 0 || line.rfind("Computed the rank of the ", 0) == 0;
}

std::string emit_text(const Certificate& c) {
  const int width = coeff_width(c.prime);
  std::ostringstream os;
  os << "Using random seed: " << c.seed << '\n';
  os << "Need a " << shape(c.rows, c.cols) << " matrix.\n";
  for (const auto& f : c.forms) os << form_line(f, width) << '\n';
  os << c.construct_line << '\n' << c.rank_line << '\n';
  os << "Found " << c.found << " vs. " << c.expected << " expected.\n";
  os << "T_" << c.order << '(' << c.n_or_d << ", " << c.t << ", " << c.step << ") is " << to_string(c.verdict) << " ("
     << to_string(c.abundance) << ")\n";
  for (const auto& [k, v] : c.trailer) os << k << '=' << v << '\n';
  return os.str();
}

std::string emit_text(const VerificationOutcome& o) {
  Certificate c;
  c.seed = o.seed;
  c.rows = o.rows;
  c.cols = o.cols;
  c.forms = o.forms;
  c.prime = o.prime;
  c.construct_line = "Constructed T in " + timing(o.construct_seconds) + "s.";
  c.rank_line = "Computed the rank of the " + shape(o.rows, o.cols) + " matrix T over F_" + std::to_string(o.prime) +
                " in " + timing(o.rank_seconds) + "s.";
  c.found = o.found;
  c.expected = o.expected;
  c.order = o.order;
  c.t = o.t;
  c.verdict = o.verdict;
  c.abundance = o.abundance;
  c.trailer = {{"substream", kSubstreamAlgorithm},
               {"family", to_string(o.family)},
               {"branch", to_string(o.branch)},
               {"master_seed", std::to_string(o.master_seed)},
               {"attempt", std::to_string(o.attempt)},
               {"retries", std::to_string(o.retries)},
               {"resamples", std::to_string(o.resamples)},
               {"full_rows", std::to_string(o.full_rows)},
               {"matrix_digest", hex64(o.digest)}};
  return emit_text(c);
}

Certificate parse_certificate(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
      lines.push_back(std::move(l));
    }
  }
  Certificate c;
  std::size_t i = 0;
  auto need = [&](const char* what) -> std::string_view {
    if (i >= lines.size()) parse_fail(i + 1, std::string("missing ") + what);
    return lines[i];
  };

  std::string_view s = need("seed line");
  if (!eat(s, "Using random seed: ") || !eat_int(s, c.seed) || !s.empty()) parse_fail(i + 1, "bad seed line");
  ++i;
  s = need("matrix size line");
  if (!eat(s, "Need a ") || !parse_shape(s, c.rows, c.cols) || s != " matrix.") parse_fail(i + 1, "bad size line");
  ++i;

  std::vector<std::size_t> form_line_no;
  while (true) {
    s = need("timing line");
    if (s.substr(0, 17) == "Constructed T in ") break;
    const auto eq = s.find(" = [");
    if (eq == std::string_view::npos || s.back() != ']') parse_fail(i + 1, "bad form line");
    RecordedForm f;
    try {
      f.label = FormLabel::parse(std::string(s.substr(0, eq)));
    } catch (const Error& e) {
      parse_fail(i + 1, e.what());
    }
    std::string_view body = s.substr(eq + 4, s.size() - eq - 5);
    while (!body.empty()) {
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      if (body.empty()) break;
      std::uint64_t v = 0;
      if (!eat_int(body, v) || (!body.empty() && body.front() != ' ')) parse_fail(i + 1, "bad coefficient");
      if (v > 0xffff) fail(ErrorCode::InvariantViolation, "line " + std::to_string(i + 1) + ": coefficient too large");
      f.coeffs.push_back(static_cast<Coeff>(v));
    }
    if (f.coeffs.empty()) parse_fail(i + 1, "form without coefficients");
    c.forms.push_back(std::move(f));
    form_line_no.push_back(i + 1);
    ++i;
  }
  c.construct_line = lines[i++];
  {
    std::string_view t = c.construct_line;
    t.remove_prefix(17);
    if (t.empty() || t.back() != '.') parse_fail(i, "bad construction timing line");
  }

  s = need("rank timing line");
  c.rank_line = lines[i];
  {
    std::int64_t r = 0, k = 0;
    if (!eat(s, "Computed the rank of the ") || !parse_shape(s, r, k) || !eat(s, " matrix T over F_") ||
        !eat_int(s, c.prime) || !eat(s, " in ") || s.empty() || s.back() != '.')
      parse_fail(i + 1, "bad rank line");
    if (r != c.rows || k != c.cols) parse_fail(i + 1, "rank line shape differs from the size line");
  }
  ++i;
  if (!is_prime(c.prime) || c.prime >= kMaxPrime) parse_fail(i, "field size is not a prime below 2^15");
  for (std::size_t q = 0; q < c.forms.size(); ++q)
    for (Coeff v : c.forms[q].coeffs)
      require(v < c.prime, ErrorCode::InvariantViolation,
              "line " + std::to_string(form_line_no[q]) + ": coefficient " + std::to_string(v) +
                  " is not below " + std::to_string(c.prime));

  s = need("found line");
  if (!eat(s, "Found ") || !eat_int(s, c.found) || !eat(s, " vs. ") || !eat_int(s, c.expected) ||
      s != " expected.")
    parse_fail(i + 1, "bad found line");
  ++i;

  s = need("statement line");
  {
    if (!eat(s, "T_") || !eat_int(s, c.order) || !eat(s, "(") || !eat_int(s, c.n_or_d) || !eat(s, ", ") ||
        !eat_int(s, c.t) || !eat(s, ", ") || !eat_int(s, c.step) || !eat(s, ") is "))
      parse_fail(i + 1, "bad statement line");
    if (eat(s, "TRUE"))
      c.verdict = Verdict::True;
    else if (eat(s, "UNVERIFIED"))
      c.verdict = Verdict::Unverified;
    else
      parse_fail(i + 1, "unknown verdict");
    if (eat(s, " (SUBABUNDANT)"))
      c.abundance = Abundance::Sub;
    else if (eat(s, " (SUPERABUNDANT)"))
      c.abundance = Abundance::Super;
    else if (eat(s, " (EQUIABUNDANT)"))
      c.abundance = Abundance::Equi;
    else
      parse_fail(i + 1, "unknown abundance");
    if (!s.empty()) parse_fail(i + 1, "trailing text after the statement");
  }
  ++i;
  for (; i < lines.size(); ++i) {
    if (lines[i].empty() && i + 1 == lines.size()) break;
    const auto eq = lines[i].find('=');
    if (eq == std::string::npos || eq == 0) parse_fail(i + 1, "bad trailer line");
    c.trailer.emplace_back(lines[i].substr(0, eq), lines[i].substr(eq + 1));
  }
  return c;
}

namespace {

Family infer_family(const Certificate& c) {
  const std::string tag = c.trailer_value("family");
  if (!tag.empty()) {
    auto f = parse_family(tag);
    require(f.has_value(), ErrorCode::ParseError, "unknown family '" + tag + "' in trailer");
    return *f;
  }
  for (const auto& f : c.forms)
    if (f.label.role == "k" || f.label.role == "m") return Family::Cubics;
  return Family::Quaternary;
}

Branch infer_branch(const Certificate& c, const LatticeConfig& cfg) {
  const std::string tag = c.trailer_value("branch");
  if (!tag.empty()) {
    auto b = parse_branch(tag);
    require(b.has_value(), ErrorCode::ParseError, "unknown branch '" + tag + "' in trailer");
    return *b;
  }
  for (Branch b : {Branch::S1, Branch::S2}) {
    const StatementShape sh = statement_shape(cfg, c.t, b, c.order);
    if (sh.rows == c.rows && sh.cols == c.cols) return b;
  }
  fail(ErrorCode::DimensionMismatch, "matrix shape " + std::to_string(c.rows) + " x " + std::to_string(c.cols) +
                                         " matches neither branch at t=" + std::to_string(c.t));
}

}  // namespace

ReverifyResult reverify(const Certificate& cert, const VerifyOptions& opts) {
  ReverifyResult res;
  res.family = infer_family(cert);
  const LatticeConfig cfg = LatticeConfig::proof(res.family);
  auto mismatch = [&](const std::string& m) { res.mismatches.push_back(m); };
  if (cert.step != cfg.step) mismatch("step " + std::to_string(cert.step) + " is not " + std::to_string(cfg.step));
  if (cert.n_or_d != 3) mismatch("statement is not about n = 3 or d = 3");
  if (!res.mismatches.empty()) return res;
  try {
    res.branch = infer_branch(cert, cfg);
    res.outcome = rebuild_statement(cfg, cert.t, res.branch, cert.order, cert.prime, cert.forms, opts);
  } catch (const Error& e) {
    // a form list that contradicts the point plan is an error, not a verdict
    if (e.code() == ErrorCode::BudgetExceeded || e.code() == ErrorCode::DimensionMismatch) throw;
    mismatch(std::string("rebuild failed: ") + e.what());
    return res;
  }
  const auto& o = res.outcome;
  auto check = [&](const char* what, std::int64_t recorded, std::int64_t actual) {
    if (recorded != actual)
      mismatch(std::string(what) + ": certificate says " + std::to_string(recorded) + ", recomputed " +
               std::to_string(actual));
  };
  check("rows", cert.rows, o.rows);
  check("columns", cert.cols, o.cols);
  check("expected rank", cert.expected, o.expected);
  check("found rank", cert.found, o.found);
  if (cert.abundance != o.abundance)
    mismatch(std::string("abundance: certificate says ") + to_string(cert.abundance) + ", recomputed " +
             to_string(o.abundance));
  const std::string digest = cert.trailer_value("matrix_digest");
  if (!digest.empty() && digest != hex64(o.digest))
    mismatch("matrix digest: certificate says " + digest + ", recomputed " + hex64(o.digest));
  if (cert.verdict != Verdict::True) mismatch("certificate does not claim TRUE");
  if (o.verdict != Verdict::True) mismatch("recomputed rank is below the expected rank");
  res.confirmed = res.mismatches.empty();
  return res;
}

}  // namespace chowdefect
