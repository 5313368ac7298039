// chowdefect: verify base cases, print the schedule, run the Terracini oracle,
// re-check certificates and run the arithmetic self-check.
//
// Exit codes: 0 everything verified, 2 something unverified or mismatched,
// 1 usage or operational error.

#include <unistd.h>

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chowdefect/chowdefect.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnverified = 2;

struct Failure {
  std::string what;
};

void check(cd_status s, const std::string& ctx) {
  if (s != CD_OK) throw Failure{ctx + ": " + cd_status_name(s) + ": " + cd_last_error()};
}

struct TRange {
  std::int64_t lo = 0, hi = 0;
};

TRange parse_trange(const std::string& text) {
  auto to_int = [&](const std::string& s) -> std::int64_t {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (s.empty() || pos != s.size()) throw Failure{"bad --t value '" + text + "'"};
    return v;
  };
  TRange r;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    r.lo = r.hi = to_int(text);
  } else {
    r.lo = to_int(text.substr(0, dots));
    r.hi = to_int(text.substr(dots + 2));
  }
  if (r.lo < 1 || r.hi < r.lo) throw Failure{"--t range '" + text + "' is empty or below 1"};
  return r;
}

std::vector<cd_branch> parse_branches(const std::string& text) {
  if (text == "both") return {CD_BRANCH_S1, CD_BRANCH_S2};
  cd_branch b;
  if (cd_parse_branch(text.c_str(), &b) != CD_OK) throw Failure{"unknown branch '" + text + "'"};
  return {b};
}

cd_family parse_family_flag(const std::string& text) {
  cd_family f;
  if (cd_parse_family(text.c_str(), &f) != CD_OK) throw Failure{"unknown family '" + text + "'"};
  return f;
}

std::uint64_t gib(double g) { return static_cast<std::uint64_t>(g * double(1ULL << 30)); }

void progress_to_stderr(std::int64_t done, std::int64_t total, std::int64_t rank, void* user) {
  const char* tag = static_cast<const char*>(user);
  std::fprintf(stderr, "\r[%s] %" PRId64 "/%" PRId64 " columns, rank %" PRId64, tag, done, total, rank);
  if (done >= total) std::fputc('\n', stderr);
  std::fflush(stderr);
}

struct CommonFlags {
  std::uint32_t prime = 8191;
  int threads = 1;
  double mem_cap_gb = 0;  // 0: environment or default
  bool streaming = false;
  bool progress = isatty(STDERR_FILENO) != 0;

  void add_to(CLI::App* app) {
    app->add_option("--prime", prime, "Field size (a prime below 2^15)")->capture_default_str();
    app->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--mem-cap-gb", mem_cap_gb, "Memory cap in GiB (default: CHOWDEFECT_MEM_CAP_GB or 8)")
        ->check(CLI::PositiveNumber);
    app->add_flag("--streaming", streaming, "Eliminate in column blocks with a bounded working set");
    app->add_flag("--progress,!--no-progress", progress, "Report elimination progress on standard error");
  }

  cd_verify_options options() const {
    cd_verify_options o;
    cd_verify_options_init(&o);
    o.prime = prime;
    o.threads = threads;
    if (mem_cap_gb > 0) o.mem_cap_bytes = gib(mem_cap_gb);
    o.streaming = streaming ? 1 : 0;
    return o;
  }
};

std::string cert_name(cd_family f, std::int64_t t, cd_branch b) {
  return std::string(cd_family_name(f)) + "_t" + std::to_string(t) + "_" + cd_branch_name(b) + ".cert";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure{"cannot write " + path.string()};
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string family, t, branch = "both", out = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int retries = 2;
  int order = -1;
  CommonFlags common;
};

int cmd_verify(const VerifyArgs& a) {
  const cd_family family = parse_family_flag(a.family);
  const TRange range = parse_trange(a.t);
  const auto branches = parse_branches(a.branch);
  std::uint64_t seed = a.seed;
  if (!a.seed_given) seed = static_cast<std::uint64_t>(std::chrono::system_clock::now().time_since_epoch().count());
  std::fprintf(stderr, "seed: %" PRIu64 "\n", seed);

  const bool single = range.lo == range.hi && branches.size() == 1;
  std::filesystem::create_directories(a.out);

  cd_verify_options opts = a.common.options();
  opts.seed = seed;
  opts.retries = a.retries;
  opts.order = a.order;

  if (!single)
    std::printf("family\tt\torder\tbranch\trows\tcols\texpected\tfound\tverdict\tabundance\tseed\tattempt\tseconds\n");
  bool all_true = true, any_error = false;
  for (std::int64_t t = range.lo; t <= range.hi; ++t) {
    for (cd_branch b : branches) {
      std::string tag = std::string(cd_family_name(family)) + " t=" + std::to_string(t) + " " + cd_branch_name(b);
      opts.progress = a.common.progress ? progress_to_stderr : nullptr;
      opts.progress_user = tag.data();
      cd_outcome* out = nullptr;
      const cd_status st = cd_verify(family, t, b, &opts, &out);
      if (st != CD_OK) {
        std::fprintf(stderr, "%s: %s: %s\n", tag.c_str(), cd_status_name(st), cd_last_error());
        any_error = true;
        continue;
      }
      cd_outcome_info info;
      char* text = nullptr;
      check(cd_outcome_get_info(out, &info), tag);
      check(cd_outcome_certificate(out, &text), tag);
      const std::string cert(text);
      cd_string_free(text);
      cd_outcome_free(out);
      write_file(std::filesystem::path(a.out) / cert_name(family, t, b), cert);
      all_true &= info.verdict == CD_VERDICT_TRUE;
      if (single) {
        std::fputs(cert.c_str(), stdout);
      } else {
        std::printf("%s\t%" PRId64 "\t%d\t%s\t%" PRId64 "\t%" PRId64 "\t%" PRId64 "\t%" PRId64
                    "\t%s\t%s\t%" PRIu64 "\t%d\t%.3f\n",
                    cd_family_name(family), t, info.order, cd_branch_name(b), info.rows, info.cols, info.expected,
                    info.found, cd_verdict_name(info.verdict), cd_abundance_name(info.abundance), info.seed,
                    info.attempt, info.construct_seconds + info.rank_seconds);
      }
      std::fflush(stdout);
    }
  }
  if (any_error) return kExitError;
  return all_true ? kExitOk : kExitUnverified;
}

// ---- schedule -------------------------------------------------------------

struct ScheduleArgs {
  std::string family;
  std::int64_t cap = 0;
  CommonFlags common;
};

int cmd_schedule(const ScheduleArgs& a) {
  const cd_family family = parse_family_flag(a.family);
  const cd_verify_options opts = a.common.options();
  cd_schedule* s = nullptr;
  check(cd_schedule_build(family, a.cap, &s), "schedule");
  std::printf("t\torder\tbranch\ts\teta\tmu\tN\trows\tcols\ta\texpected\tabundance\tdense_bytes\tstreaming_bytes\tmode\n");
  for (std::size_t i = 0; i < cd_schedule_size(s); ++i) {
    cd_schedule_row r;
    check(cd_schedule_get_row(s, i, &r), "schedule");
    const char* mode = "over-cap";
    if (!opts.streaming && r.dense_bytes <= opts.mem_cap_bytes)
      mode = "dense";
    else if (r.streaming_bytes <= opts.mem_cap_bytes)
      mode = "streaming";
    std::printf("%" PRId64 "\t%d\t%s\t%" PRId64 "\t%" PRId64 "\t%" PRId64 "\t%" PRId64 "\t%" PRId64 "\t%" PRId64
                "\t%" PRId64 "\t%" PRId64 "\t%s\t%" PRIu64 "\t%" PRIu64 "\t%s\n",
                r.t, r.order, cd_branch_name(r.branch), r.points, r.eta, r.mu, r.full_rows, r.rows, r.cols, r.a,
                r.expected, cd_abundance_name(r.abundance), r.dense_bytes, r.streaming_bytes, mode);
  }
  cd_schedule_free(s);
  return kExitOk;
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  int d = 0, n = 0;
  std::int64_t s = 0;
  std::uint64_t seed = 1;
  CommonFlags common;
};

int cmd_oracle(const OracleArgs& a) {
  cd_oracle_result r;
  check(cd_oracle_run(a.d, a.n, a.s, a.seed, a.common.prime, a.common.threads, &r), "oracle");
  std::printf("d\t%d\nn\t%d\ns\t%" PRId64 "\n", a.d, a.n, a.s);
  std::printf("terracini_rank\t%" PRId64 "\nexpected\t%" PRId64 "\nambient\t%" PRId64 "\n", r.rank, r.expected,
              r.ambient);
  if (r.known_defective_rank >= 0) std::printf("known_defective_rank\t%" PRId64 "\n", r.known_defective_rank);
  std::printf("class\t%s\n", cd_oracle_class_name(r.klass));
  return kExitOk;
}

// ---- reverify -------------------------------------------------------------

struct ReverifyArgs {
  std::vector<std::string> paths;
  CommonFlags common;
};

int cmd_reverify(const ReverifyArgs& a) {
  cd_verify_options opts = a.common.options();
  bool all = true, error = false;
  for (const auto& path : a.paths) {
    cd_certificate* c = nullptr;
    cd_status st = cd_certificate_load(path.c_str(), &c);
    if (st != CD_OK) {
      std::fprintf(stderr, "%s: %s: %s\n", path.c_str(), cd_status_name(st), cd_last_error());
      error = true;
      continue;
    }
    opts.progress = a.common.progress ? progress_to_stderr : nullptr;
    opts.progress_user = const_cast<char*>(path.c_str());
    cd_reverify_report* r = nullptr;
    st = cd_reverify(c, &opts, &r);
    cd_certificate_free(c);
    if (st == CD_ERR_DIMENSION_MISMATCH) {
      all = false;
      std::printf("%s\tREJECTED\n  %s\n", path.c_str(), cd_last_error());
      continue;
    }
    if (st != CD_OK) {
      std::fprintf(stderr, "%s: %s: %s\n", path.c_str(), cd_status_name(st), cd_last_error());
      error = true;
      continue;
    }
    if (cd_reverify_confirmed(r)) {
      cd_outcome_info info;
      check(cd_reverify_outcome_info(r, &info), path);
      std::printf("%s\tCONFIRMED\t%s\tt=%" PRId64 "\t%s\trank %" PRId64 " of %" PRId64 "\n", path.c_str(),
                  cd_family_name(info.family), info.t, cd_branch_name(info.branch), info.found, info.expected);
    } else {
      all = false;
      std::printf("%s\tREJECTED\n", path.c_str());
      for (std::size_t i = 0; i < cd_reverify_mismatch_count(r); ++i)
        std::printf("  %s\n", cd_reverify_mismatch(r, i));
    }
    cd_reverify_free(r);
  }
  if (error) return kExitError;
  return all ? kExitOk : kExitUnverified;
}

// ---- selfcheck ------------------------------------------------------------

struct SelfcheckArgs {
  bool quick = false;
  std::int64_t t_max = 200;
  std::vector<std::int64_t> a_table;
};

int cmd_selfcheck(const SelfcheckArgs& a) {
  if (!a.a_table.empty() && a.a_table.size() != 27) throw Failure{"--a-table needs 27 values"};
  cd_selfcheck* s = nullptr;
  check(cd_selfcheck_run(a.quick ? 60 : a.t_max, a.a_table.empty() ? nullptr : a.a_table.data(), &s), "selfcheck");
  std::printf("identity\tchecks\tfailures\n");
  for (std::size_t i = 0; i < cd_selfcheck_tally_count(s); ++i) {
    const char* id = nullptr;
    std::int64_t checks = 0, failures = 0;
    check(cd_selfcheck_tally(s, i, &id, &checks, &failures), "selfcheck");
    std::printf("%s\t%" PRId64 "\t%" PRId64 "\n", id, checks, failures);
  }
  const std::size_t nv = cd_selfcheck_violation_count(s);
  for (std::size_t i = 0; i < nv && i < 10; ++i) {
    const char *id = nullptr, *detail = nullptr;
    std::int64_t t = 0;
    int order = 0;
    check(cd_selfcheck_violation(s, i, &id, &t, &order, &detail), "selfcheck");
    std::fprintf(stderr, "violation: %s at t=%" PRId64 " i=%d: %s\n", id, t, order, detail);
  }
  if (nv > 10) std::fprintf(stderr, "... %zu violations in total\n", nv);
  const bool ok = cd_selfcheck_ok(s) != 0;
  cd_selfcheck_free(s);
  std::printf("%s\n", ok ? "selfcheck passed" : "selfcheck FAILED");
  return ok ? kExitOk : kExitUnverified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifier for the base cases of the nondefectivity induction of Chow-variety secants"};
  app.set_version_flag("--version", std::string(cd_version()));
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Verify base-case statements and write certificates");
  verify->add_option("--family", va.family, "quaternary or cubics")->required();
  verify->add_option("--t", va.t, "t or A..B")->required();
  verify->add_option("--branch", va.branch, "s1, s2 or both")->capture_default_str();
  verify->add_option("--seed", va.seed, "Master seed (default: time-derived)")->each([&](const std::string&) {
    va.seed_given = true;
  });
  verify->add_option("--retries", va.retries, "Extra attempts after a rank deficit")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--order", va.order, "Override the statement order i (default K(t))");
  verify->add_option("--out", va.out, "Directory for certificate files")->capture_default_str();
  va.common.add_to(verify);

  ScheduleArgs sa;
  auto* schedule = app.add_subcommand("schedule", "List every base case with shapes and memory estimates");
  schedule->add_option("--family", sa.family, "quaternary or cubics")->required();
  schedule->add_option("--cap", sa.cap, "Largest t to list")->check(CLI::PositiveNumber);
  sa.common.add_to(schedule);

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Terracini rank of s random points on C_{d,n}");
  oracle->add_option("--d", oa.d, "Degree")->required();
  oracle->add_option("--n", oa.n, "Projective dimension")->required();
  oracle->add_option("--s", oa.s, "Number of points")->required();
  oracle->add_option("--seed", oa.seed, "Seed")->capture_default_str();
  oa.common.add_to(oracle);

  ReverifyArgs ra;
  auto* rev = app.add_subcommand("reverify", "Re-check certificates from their recorded forms");
  rev->add_option("paths", ra.paths, "Certificate files")->required();
  ra.common.add_to(rev);

  SelfcheckArgs ca;
  auto* self = app.add_subcommand("selfcheck", "Check the arithmetic identities of the induction");
  self->add_flag("--quick", ca.quick, "Scan t <= 60 only");
  self->add_option("--t-max", ca.t_max, "Largest t scanned")->check(CLI::PositiveNumber)->capture_default_str();
  self->add_option("--a-table", ca.a_table, "Replacement a-table (27 values)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*schedule) return cmd_schedule(sa);
    if (*oracle) return cmd_oracle(oa);
    if (*rev) return cmd_reverify(ra);
    if (*self) return cmd_selfcheck(ca);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.what.c_str());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
