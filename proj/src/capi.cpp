#include "chowdefect/chowdefect.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "chowdefect/bolattice.hpp"
#include "chowdefect/certificate.hpp"
#include "chowdefect/chow.hpp"
#include "chowdefect/error.hpp"
#include "chowdefect/finite_calculus.hpp"
#include "chowdefect/selfcheck.hpp"

using namespace chowdefect;

struct cd_outcome {
  VerificationOutcome o;
};
struct cd_schedule {
  std::vector<StatementShape> rows;
};
struct cd_certificate {
  Certificate c;
};
struct cd_reverify_report {
  ReverifyResult r;
};
struct cd_selfcheck {
  SelfcheckReport r;
};

namespace {

thread_local std::string g_last_error;

cd_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return CD_ERR_INVALID_ARGUMENT;
    case ErrorCode::DomainError: return CD_ERR_DOMAIN;
    case ErrorCode::NonIntegralValue: return CD_ERR_NON_INTEGRAL;
    case ErrorCode::Overflow: return CD_ERR_OVERFLOW;
    case ErrorCode::IndexOutOfRange: return CD_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::DimensionMismatch: return CD_ERR_DIMENSION_MISMATCH;
    case ErrorCode::EmptyProduct: return CD_ERR_EMPTY_PRODUCT;
    case ErrorCode::BudgetExceeded: return CD_ERR_BUDGET_EXCEEDED;
    case ErrorCode::NegativeCount: return CD_ERR_NEGATIVE_COUNT;
    case ErrorCode::ParseError: return CD_ERR_PARSE;
    case ErrorCode::InvariantViolation: return CD_ERR_INVARIANT;
    case ErrorCode::Io: return CD_ERR_IO;
  }
  return CD_ERR_INTERNAL;
}

template <class F>
cd_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return CD_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CD_ERR_BUDGET_EXCEEDED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CD_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Family family_of(cd_family f) {
  require(f == CD_FAMILY_QUATERNARY || f == CD_FAMILY_CUBICS, ErrorCode::InvalidArgument, "unknown family");
  return f == CD_FAMILY_QUATERNARY ? Family::Quaternary : Family::Cubics;
}

Branch branch_of(cd_branch b) {
  require(b == CD_BRANCH_S1 || b == CD_BRANCH_S2, ErrorCode::InvalidArgument, "unknown branch");
  return b == CD_BRANCH_S1 ? Branch::S1 : Branch::S2;
}

cd_family to_c(Family f) { return f == Family::Quaternary ? CD_FAMILY_QUATERNARY : CD_FAMILY_CUBICS; }
cd_branch to_c(Branch b) { return b == Branch::S1 ? CD_BRANCH_S1 : CD_BRANCH_S2; }
cd_abundance to_c(Abundance a) {
  return a == Abundance::Sub ? CD_SUBABUNDANT : (a == Abundance::Super ? CD_SUPERABUNDANT : CD_EQUIABUNDANT);
}
cd_verdict to_c(Verdict v) { return v == Verdict::True ? CD_VERDICT_TRUE : CD_VERDICT_UNVERIFIED; }

VerifyOptions options_of(const cd_verify_options* in) {
  cd_verify_options d;
  if (!in) {
    cd_verify_options_init(&d);
    in = &d;
  }
  VerifyOptions o;
  o.order = in->order;
  o.prime = in->prime;
  o.seed = in->seed;
  o.retries = in->retries;
  o.threads = in->threads;
  o.mem_cap_bytes = in->mem_cap_bytes;
  o.streaming = in->streaming != 0;
  require(o.retries >= 0, ErrorCode::InvalidArgument, "retries must be nonnegative");
  require(o.threads >= 1, ErrorCode::InvalidArgument, "threads must be positive");
  if (in->progress) {
    cd_progress_fn fn = in->progress;
    void* user = in->progress_user;
    o.progress = [fn, user](std::int64_t done, std::int64_t total, std::int64_t rank) { fn(done, total, rank, user); };
  }
  return o;
}

void fill(const VerificationOutcome& o, cd_outcome_info* info) {
  info->family = to_c(o.family);
  info->t = o.t;
  info->order = o.order;
  info->branch = to_c(o.branch);
  info->prime = o.prime;
  info->seed = o.seed;
  info->master_seed = o.master_seed;
  info->attempt = o.attempt;
  info->retries = o.retries;
  info->rows = o.rows;
  info->full_rows = o.full_rows;
  info->cols = o.cols;
  info->expected = o.expected;
  info->found = o.found;
  info->abundance = to_c(o.abundance);
  info->verdict = to_c(o.verdict);
  info->resamples = o.resamples;
  info->construct_seconds = o.construct_seconds;
  info->rank_seconds = o.rank_seconds;
  info->digest = o.digest;
}

template <class T>
T* checked_handle(T* h, const char* what) {
  need(h, what);
  return h;
}

}  // namespace

extern "C" {

const char* cd_version(void) { return "1.0.0"; }
const char* cd_last_error(void) { return g_last_error.c_str(); }
void cd_string_free(char* s) { std::free(s); }

const char* cd_status_name(cd_status s) {
  switch (s) {
    case CD_OK: return "ok";
    case CD_ERR_INVALID_ARGUMENT: return to_string(ErrorCode::InvalidArgument);
    case CD_ERR_DOMAIN: return to_string(ErrorCode::DomainError);
    case CD_ERR_NON_INTEGRAL: return to_string(ErrorCode::NonIntegralValue);
    case CD_ERR_OVERFLOW: return to_string(ErrorCode::Overflow);
    case CD_ERR_INDEX_OUT_OF_RANGE: return to_string(ErrorCode::IndexOutOfRange);
    case CD_ERR_DIMENSION_MISMATCH: return to_string(ErrorCode::DimensionMismatch);
    case CD_ERR_EMPTY_PRODUCT: return to_string(ErrorCode::EmptyProduct);
    case CD_ERR_BUDGET_EXCEEDED: return to_string(ErrorCode::BudgetExceeded);
    case CD_ERR_NEGATIVE_COUNT: return to_string(ErrorCode::NegativeCount);
    case CD_ERR_PARSE: return to_string(ErrorCode::ParseError);
    case CD_ERR_INVARIANT: return to_string(ErrorCode::InvariantViolation);
    case CD_ERR_IO: return to_string(ErrorCode::Io);
    case CD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cd_family_name(cd_family f) { return f == CD_FAMILY_CUBICS ? "cubics" : "quaternary"; }
const char* cd_branch_name(cd_branch b) { return b == CD_BRANCH_S2 ? "s2" : "s1"; }
const char* cd_abundance_name(cd_abundance a) {
  return to_string(a == CD_SUBABUNDANT ? Abundance::Sub : (a == CD_SUPERABUNDANT ? Abundance::Super : Abundance::Equi));
}
const char* cd_verdict_name(cd_verdict v) { return to_string(v == CD_VERDICT_TRUE ? Verdict::True : Verdict::Unverified); }
const char* cd_oracle_class_name(cd_oracle_class c) {
  return to_string(c == CD_ORACLE_NONDEFECTIVE_EVIDENCE ? OracleClass::NondefectiveEvidence
                   : c == CD_ORACLE_INCONCLUSIVE        ? OracleClass::Inconclusive
                                                        : OracleClass::MatchesKnownDefective);
}

cd_status cd_parse_family(const char* text, cd_family* out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    auto f = parse_family(text);
    require(f.has_value(), ErrorCode::InvalidArgument, std::string("unknown family '") + text + "'");
    *out = to_c(*f);
  });
}

cd_status cd_parse_branch(const char* text, cd_branch* out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    auto b = parse_branch(text);
    require(b.has_value(), ErrorCode::InvalidArgument, std::string("unknown branch '") + text + "'");
    *out = to_c(*b);
  });
}

void cd_verify_options_init(cd_verify_options* opts) {
  if (!opts) return;
  const VerifyOptions d;
  opts->order = d.order;
  opts->prime = d.prime;
  opts->seed = d.seed;
  opts->retries = d.retries;
  opts->threads = d.threads;
  opts->mem_cap_bytes = d.mem_cap_bytes;
  if (const char* env = std::getenv("CHOWDEFECT_MEM_CAP_GB")) {
    char* end = nullptr;
    const double gb = std::strtod(env, &end);
    if (end != env && *end == '\0' && gb > 0) opts->mem_cap_bytes = static_cast<std::uint64_t>(gb * (1ULL << 30));
  }
  opts->streaming = 0;
  opts->progress = nullptr;
  opts->progress_user = nullptr;
}

cd_status cd_verify(cd_family family, int64_t t, cd_branch branch, const cd_verify_options* opts, cd_outcome** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    const LatticeConfig cfg = LatticeConfig::proof(family_of(family));
    auto h = std::make_unique<cd_outcome>();
    h->o = verify_statement(cfg, t, branch_of(branch), options_of(opts));
    *out = h.release();
  });
}

cd_status cd_outcome_get_info(const cd_outcome* o, cd_outcome_info* info) {
  return guard([&] {
    need(info, "info");
    fill(checked_handle(o, "outcome")->o, info);
  });
}

cd_status cd_outcome_certificate(const cd_outcome* o, char** text) {
  return guard([&] {
    need(text, "text");
    *text = dup_string(emit_text(checked_handle(o, "outcome")->o));
  });
}

void cd_outcome_free(cd_outcome* o) { delete o; }

cd_status cd_schedule_build(cd_family family, int64_t t_cap, cd_schedule** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    const LatticeConfig cfg = LatticeConfig::proof(family_of(family));
    std::optional<std::int64_t> cap;
    if (t_cap > 0) cap = t_cap;
    auto h = std::make_unique<cd_schedule>();
    for (const auto& st : base_case_schedule(cfg, cap)) h->rows.push_back(statement_shape(cfg, st.t, st.branch, st.order));
    *out = h.release();
  });
}

size_t cd_schedule_size(const cd_schedule* s) { return s ? s->rows.size() : 0; }

cd_status cd_schedule_get_row(const cd_schedule* s, size_t i, cd_schedule_row* row) {
  return guard([&] {
    need(row, "row");
    const auto& rows = checked_handle(s, "schedule")->rows;
    require(i < rows.size(), ErrorCode::IndexOutOfRange, "schedule row out of range");
    const StatementShape& sh = rows[i];
    row->t = sh.t;
    row->order = sh.order;
    row->branch = to_c(sh.branch);
    row->points = sh.points;
    row->eta = sh.plan.eta;
    row->mu = sh.plan.mu;
    row->full_rows = sh.full_rows;
    row->rows = sh.rows;
    row->cols = sh.cols;
    row->a = sh.a;
    row->expected = sh.expected;
    row->abundance = to_c(sh.abundance);
    row->dense_bytes = sh.dense_bytes;
    row->streaming_bytes = sh.streaming_bytes;
  });
}

void cd_schedule_free(cd_schedule* s) { delete s; }

cd_status cd_certificate_parse(const char* text, cd_certificate** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = nullptr;
    auto h = std::make_unique<cd_certificate>();
    h->c = parse_certificate(text);
    *out = h.release();
  });
}

cd_status cd_certificate_load(const char* path, cd_certificate** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::Io, std::string("cannot open '") + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    require(!in.bad(), ErrorCode::Io, std::string("cannot read '") + path + "'");
    auto h = std::make_unique<cd_certificate>();
    h->c = parse_certificate(buf.str());
    *out = h.release();
  });
}

cd_status cd_certificate_emit(const cd_certificate* c, char** text) {
  return guard([&] {
    need(text, "text");
    *text = dup_string(emit_text(checked_handle(c, "certificate")->c));
  });
}

void cd_certificate_free(cd_certificate* c) { delete c; }

cd_status cd_reverify(const cd_certificate* c, const cd_verify_options* opts, cd_reverify_report** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    auto h = std::make_unique<cd_reverify_report>();
    h->r = reverify(checked_handle(c, "certificate")->c, options_of(opts));
    *out = h.release();
  });
}

int cd_reverify_confirmed(const cd_reverify_report* r) { return r && r->r.confirmed ? 1 : 0; }

cd_status cd_reverify_outcome_info(const cd_reverify_report* r, cd_outcome_info* info) {
  return guard([&] {
    need(info, "info");
    fill(checked_handle(r, "report")->r.outcome, info);
  });
}

size_t cd_reverify_mismatch_count(const cd_reverify_report* r) { return r ? r->r.mismatches.size() : 0; }

const char* cd_reverify_mismatch(const cd_reverify_report* r, size_t i) {
  if (!r || i >= r->r.mismatches.size()) return nullptr;
  return r->r.mismatches[i].c_str();
}

void cd_reverify_free(cd_reverify_report* r) { delete r; }

cd_status cd_selfcheck_run(int64_t t_max, const int64_t* a_table, cd_selfcheck** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    SelfcheckOptions o;
    o.t_max = t_max;
    if (a_table) {
      std::array<std::int64_t, 27> tab{};
      std::copy(a_table, a_table + 27, tab.begin());
      o.a_table = tab;
    }
    auto h = std::make_unique<cd_selfcheck>();
    h->r = run_selfcheck(o);
    *out = h.release();
  });
}

int cd_selfcheck_ok(const cd_selfcheck* s) { return s && s->r.ok() ? 1 : 0; }
size_t cd_selfcheck_tally_count(const cd_selfcheck* s) { return s ? s->r.tallies.size() : 0; }

cd_status cd_selfcheck_tally(const cd_selfcheck* s, size_t i, const char** identity, int64_t* checks,
                             int64_t* failures) {
  return guard([&] {
    const auto& ts = checked_handle(s, "selfcheck")->r.tallies;
    require(i < ts.size(), ErrorCode::IndexOutOfRange, "tally out of range");
    if (identity) *identity = ts[i].identity.c_str();
    if (checks) *checks = ts[i].checks;
    if (failures) *failures = ts[i].failures;
  });
}

size_t cd_selfcheck_violation_count(const cd_selfcheck* s) { return s ? s->r.violations.size() : 0; }

cd_status cd_selfcheck_violation(const cd_selfcheck* s, size_t i, const char** identity, int64_t* t, int* order,
                                 const char** detail) {
  return guard([&] {
    const auto& vs = checked_handle(s, "selfcheck")->r.violations;
    require(i < vs.size(), ErrorCode::IndexOutOfRange, "violation out of range");
    if (identity) *identity = vs[i].identity.c_str();
    if (t) *t = vs[i].t;
    if (order) *order = vs[i].i;
    if (detail) *detail = vs[i].detail.c_str();
  });
}

void cd_selfcheck_free(cd_selfcheck* s) { delete s; }

cd_status cd_oracle_run(int d, int n, int64_t s, uint64_t seed, uint32_t prime, int threads, cd_oracle_result* out) {
  return guard([&] {
    need(out, "out");
    require(threads >= 1, ErrorCode::InvalidArgument, "threads must be positive");
    const SecantProblem p(d, n, s);
    const PrimeField field(prime);
    out->rank = terracini_rank(p, seed, field, threads);
    out->expected = expdim_secant(p) + 1;
    out->ambient = binomial(n + d, d);
    out->known_defective_rank = -1;
    if (d == 2 && n >= 4 && s >= 2 && s <= n / 2) out->known_defective_rank = chow_quadric_dim(n, s) + 1;
    switch (classify_oracle(p, out->rank)) {
      case OracleClass::NondefectiveEvidence: out->klass = CD_ORACLE_NONDEFECTIVE_EVIDENCE; break;
      case OracleClass::Inconclusive: out->klass = CD_ORACLE_INCONCLUSIVE; break;
      case OracleClass::MatchesKnownDefective: out->klass = CD_ORACLE_MATCHES_KNOWN_DEFECTIVE; break;
    }
  });
}

}  // extern "C"
