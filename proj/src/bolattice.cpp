#include "chowdefect/bolattice.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include "chowdefect/checked.hpp"
#include "chowdefect/error.hpp"

namespace chowdefect {

const char* to_string(Family f) { return f == Family::Quaternary ? "quaternary" : "cubics"; }
const char* to_string(Branch b) { return b == Branch::S1 ? "s1" : "s2"; }

const char* to_string(Abundance a) {
  switch (a) {
    case Abundance::Sub: return "SUBABUNDANT";
    case Abundance::Super: return "SUPERABUNDANT";
    case Abundance::Equi: return "EQUIABUNDANT";
  }
  return "EQUIABUNDANT";
}

const char* to_string(Verdict v) { return v == Verdict::True ? "TRUE" : "UNVERIFIED"; }

std::optional<Family> parse_family(const std::string& s) {
  if (s == "quaternary") return Family::Quaternary;
  if (s == "cubics") return Family::Cubics;
  return std::nullopt;
}

std::optional<Branch> parse_branch(const std::string& s) {
  if (s == "s1") return Branch::S1;
  if (s == "s2") return Branch::S2;
  return std::nullopt;
}

LatticeConfig LatticeConfig::proof(Family family) {
  LatticeConfig c{family, 27, 3, 82, make_proof_functions()};
  return c;
}

LatticeConfig LatticeConfig::with_a_table(Family family, std::span<const std::int64_t, 27> a_table) {
  LatticeConfig c{family, 27, 3, 82, make_proof_functions(a_table)};
  return c;
}

std::int64_t LatticeConfig::N(std::int64_t t) const { return binomial(t + 3, 3); }
std::int64_t LatticeConfig::m(std::int64_t t) const { return checked::add(checked::mul(3, t), 1); }

IntFunction LatticeConfig::s_fn(Branch b) const { return s_of(b).as_function(); }

int LatticeConfig::order(std::int64_t t) const {
  require(t >= 1, ErrorCode::InvalidArgument, "t must be at least 1");
  const std::int64_t ceil_q = (t + step - 1) / step;
  return static_cast<int>(std::min<std::int64_t>(ceil_q - 1, top_order));
}

int LatticeConfig::nvars(std::int64_t t) const {
  return family == Family::Quaternary ? 4 : static_cast<int>(t + 1);
}

int LatticeConfig::degree(std::int64_t t) const { return family == Family::Quaternary ? static_cast<int>(t) : 3; }

namespace {

int resolve_order(const LatticeConfig& c, std::int64_t t, int order) {
  const int k = c.order(t);
  if (order < 0) return k;
  require(order <= k, ErrorCode::InvalidArgument,
          "order " + std::to_string(order) + " exceeds K(" + std::to_string(t) + ") = " + std::to_string(k));
  return order;
}

}  // namespace

std::int64_t a_i(const LatticeConfig& c, int i, std::int64_t t, Branch b) {
  require(i >= 0, ErrorCode::InvalidArgument, "negative order");
  const IntFunction n_fn = [&c](std::int64_t u) { return c.N(u); };
  const IntFunction s = c.s_fn(b);
  std::int64_t a = checked::sub(c.N(t), backward_diff(n_fn, i, t, c.step));
  if (i > 0) {
    const std::int64_t dm = checked::sub(c.m(t), c.m(t - c.step));
    a = checked::add(a, checked::mul(checked::mul(i, dm), backward_diff(s, i - 1, t - c.step, c.step)));
  }
  return checked::add(a, checked::mul(c.m(t), backward_diff(s, i, t, c.step)));
}

Abundance abundance(const LatticeConfig& c, int i, std::int64_t t, Branch b) {
  const std::int64_t a = a_i(c, i, t, b);
  const std::int64_t n = c.N(t);
  return a < n ? Abundance::Sub : (a > n ? Abundance::Super : Abundance::Equi);
}

PointPlan point_plan(const LatticeConfig& c, std::int64_t t, Branch b, int order) {
  const int k = resolve_order(c, t, order);
  const IntFunction s = c.s_fn(b);
  PointPlan plan;
  plan.order = k;
  plan.eta = backward_diff(s, k, t, c.step);
  plan.mu = k > 0 ? backward_diff(s, k - 1, t - c.step, c.step) : 0;
  require(plan.eta >= 0 && plan.mu >= 0, ErrorCode::NegativeCount,
          "negative point count at t=" + std::to_string(t) + " (eta=" + std::to_string(plan.eta) +
              ", mu=" + std::to_string(plan.mu) + ")");
  std::int64_t total = 0;
  for (int j = 0; j <= k; ++j)
    total = checked::add(total, checked::mul(binomial(k, j), backward_diff(s, k - j, t - j * c.step, c.step)));
  require(total == s(t), ErrorCode::NegativeCount, "point-count identity fails at t=" + std::to_string(t));
  return plan;
}

std::int64_t union_z_size(const LatticeConfig& c, std::int64_t t, int order) {
  std::int64_t total = 0;
  for (int q = 1; q <= order; ++q) {
    const std::int64_t term = checked::mul(binomial(order, q), c.N(t - q * c.step));
    total = (q % 2 == 1) ? checked::add(total, term) : checked::sub(total, term);
  }
  return total;
}

StatementShape statement_shape(const LatticeConfig& c, std::int64_t t, Branch b, int order) {
  StatementShape sh;
  sh.t = t;
  sh.branch = b;
  sh.plan = point_plan(c, t, b, order);
  const int k = sh.plan.order;
  sh.order = k;
  sh.points = c.s_of(b)(t);
  sh.full_rows = c.N(t);
  sh.a = a_i(c, k, t, b);
  sh.abundance = abundance(c, k, t, b);
  const std::int64_t capped = std::min(sh.a, sh.full_rows);
  const std::int64_t l = c.step;
  using checked::add;
  using checked::mul;
  if (c.family == Family::Quaternary) {
    sh.rows = sh.full_rows;
    sh.cols = add(add(mul(k, c.N(t - l)), mul(mul(sh.plan.eta, t), 4)), mul(mul(mul(k, sh.plan.mu), l), 4));
    sh.expected = capped;
  } else {
    const std::int64_t z = union_z_size(c, t, k);
    sh.rows = sh.full_rows - z;
    sh.cols = add(mul(mul(sh.plan.eta, 3), t + 1), mul(mul(mul(k, sh.plan.mu), 3), l));
    sh.expected = capped - z;
  }
  const auto cells = checked::umul(static_cast<std::uint64_t>(sh.rows), static_cast<std::uint64_t>(sh.cols));
  sh.dense_bytes = checked::uadd(checked::umul(cells, sizeof(Coeff)), rank_workspace_bytes(sh.rows, sh.cols));
  sh.streaming_bytes = StreamingRank::memory_bytes(sh.rows, sh.cols);
  return sh;
}

// ---------------------------------------------------------------------------
// Matrix recipes

DenseMatrix MatrixRecipe::materialize(int threads) const {
  DenseMatrix mat(rows, cols, prime);
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  auto worker = [&] {
    for (std::size_t g; (g = next.fetch_add(1)) < groups.size();) {
      try {
        std::int64_t c = groups[g].first_col;
        groups[g].emit([&](std::span<const Coeff> col) {
          std::copy(col.begin(), col.end(), mat.column(c++).begin());
        });
      } catch (...) {
        std::lock_guard lock(err_mutex);
        if (!err) err = std::current_exception();
      }
    }
  };
  const int nt = std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(groups.size(), 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return mat;
}

void MatrixRecipe::stream(const std::function<void(std::span<const Coeff>)>& sink) const {
  for (const auto& g : groups) g.emit(sink);
}

void MatrixDigest::add(std::span<const Coeff> column) {
  for (Coeff v : column) {
    h_ = (h_ ^ (v & 0xffu)) * 0x100000001b3ULL;
    h_ = (h_ ^ (v >> 8)) * 0x100000001b3ULL;
  }
}

namespace {

using Sink = std::function<void(std::span<const Coeff>)>;

std::vector<int> exponents_of(std::span<const int> indices, int n) {
  std::vector<int> e(static_cast<std::size_t>(n) + 1, 0);
  for (int i : indices) ++e[static_cast<std::size_t>(i)];
  return e;
}

// Emits x_v * q for v in [v_lo, v_hi) and every q, q outer.
void emit_variable_multiples(const std::vector<HomPoly>& qs, int v_lo, int v_hi,
                             const std::vector<std::int64_t>* keep, const Sink& sink) {
  std::vector<Coeff> buf;
  for (const auto& q : qs)
    for (int v = v_lo; v < v_hi; ++v) {
      const HomPoly col = mul_variable(q, v);
      if (!keep) {
        sink(col.coeffs());
        continue;
      }
      buf.resize(keep->size());
      for (std::size_t r = 0; r < keep->size(); ++r) buf[r] = col[static_cast<std::size_t>((*keep)[r])];
      sink(buf);
    }
}

std::vector<LinearForm> draw_factors(FormSource& src, const std::string& role, std::vector<std::int64_t> prefix,
                                     std::int64_t count, int nvars, std::vector<RecordedForm>& record) {
  std::vector<LinearForm> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t g = 0; g < count; ++g) {
    auto idx = prefix;
    idx.push_back(g);
    FormLabel label{role, std::move(idx)};
    out.push_back(src.draw(label, nvars, 0, 0));
    record.push_back({std::move(label), std::vector<Coeff>(out.back().coeffs().begin(), out.back().coeffs().end())});
  }
  return out;
}

}  // namespace

MatrixRecipe build_degree_induction(const LatticeConfig& c, std::int64_t t, Branch b, int order, FormSource& src,
                                    const PrimeField& field) {
  require(c.family == Family::Quaternary, ErrorCode::InvalidArgument, "degree induction needs the quaternary family");
  const StatementShape sh = statement_shape(c, t, b, order);
  const int k = sh.order;
  const int n = 3;
  const std::int64_t l = c.step;
  MatrixRecipe r;
  r.rows = sh.rows;
  r.cols = sh.cols;
  r.prime = field.modulus();

  std::vector<std::vector<LinearForm>> g(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) g[static_cast<std::size_t>(j)] = draw_factors(src, "g", {j}, l, n + 1, r.forms);
  std::vector<std::vector<LinearForm>> pts(static_cast<std::size_t>(sh.plan.eta));
  for (std::int64_t p = 0; p < sh.plan.eta; ++p)
    pts[static_cast<std::size_t>(p)] = draw_factors(src, "l", {p}, t, n + 1, r.forms);
  std::vector<std::vector<std::vector<LinearForm>>> fs(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j)
    for (std::int64_t p = 0; p < sh.plan.mu; ++p)
      fs[static_cast<std::size_t>(j)].push_back(draw_factors(src, "f", {p, j}, t - l, n + 1, r.forms));

  std::int64_t col = 0;
  const int low = static_cast<int>(t - l);
  for (int j = 0; j < k; ++j) {
    const std::int64_t cnt = c.N(t - l);
    r.groups.push_back({col, cnt, [gj = g[static_cast<std::size_t>(j)], field, low](const Sink& sink) {
                          const HomPoly G = product_of_linear_forms(gj, field);
                          const std::int64_t total = basis_size(3, low);
                          for (std::int64_t z = 1; z <= total; ++z) {
                            const auto idx = monomial_unrank(z, 3, low);
                            sink(mul_monomial(G, exponents_of(idx, 3)).coeffs());
                          }
                        }});
    col += cnt;
  }
  for (const auto& p : pts) {
    const std::int64_t cnt = 4 * t;
    r.groups.push_back({col, cnt, [p, field](const Sink& sink) {
                          emit_variable_multiples(leave_one_out_products(HomPoly::one(3), p, field), 0, 4, nullptr,
                                                  sink);
                        }});
    col += cnt;
  }
  for (int j = 0; j < k; ++j)
    for (const auto& f : fs[static_cast<std::size_t>(j)]) {
      const std::int64_t cnt = 4 * l;
      r.groups.push_back({col, cnt, [f, gj = g[static_cast<std::size_t>(j)], field](const Sink& sink) {
                            const HomPoly F = product_of_linear_forms(f, field);
                            emit_variable_multiples(leave_one_out_products(F, gj, field), 0, 4, nullptr, sink);
                          }});
      col += cnt;
    }
  require(col == r.cols, ErrorCode::InvariantViolation, "column count disagrees with the statement shape");
  return r;
}

std::vector<std::int64_t> cubic_row_set(std::int64_t t, std::int64_t step, int order) {
  const int nv = static_cast<int>(t + 1);
  auto in_block = [step](int v, int j) { return v >= step * j && v < step * (j + 1); };
  std::vector<std::int64_t> keep;
  std::int64_t z = 0;
  for (int a = 0; a < nv; ++a)
    for (int b = a; b < nv; ++b)
      for (int c = b; c < nv; ++c, ++z) {
        bool in_union = false;
        for (int j = 0; j < order && !in_union; ++j)
          in_union = !in_block(a, j) && !in_block(b, j) && !in_block(c, j);
        if (!in_union) keep.push_back(z);
      }
  return keep;
}

MatrixRecipe build_dimension_induction(const LatticeConfig& c, std::int64_t t, Branch b, int order,
                                       FormSource& src, const PrimeField& field) {
  require(c.family == Family::Cubics, ErrorCode::InvalidArgument, "dimension induction needs the cubic family");
  const StatementShape sh = statement_shape(c, t, b, order);
  const int k = sh.order;
  const int nv = static_cast<int>(t + 1);
  const int l = static_cast<int>(c.step);
  MatrixRecipe r;
  r.rows = sh.rows;
  r.cols = sh.cols;
  r.prime = field.modulus();

  std::shared_ptr<const std::vector<std::int64_t>> keep;
  if (k > 0) {
    auto rows = cubic_row_set(t, c.step, k);
    require(static_cast<std::int64_t>(rows.size()) == sh.rows, ErrorCode::InvariantViolation,
            "row set size disagrees with inclusion-exclusion");
    keep = std::make_shared<const std::vector<std::int64_t>>(std::move(rows));
  }

  auto draw_point = [&](std::vector<std::int64_t> idx, int zb, int ze) {
    std::array<LinearForm, 3> klm{LinearForm({1}, field), LinearForm({1}, field), LinearForm({1}, field)};
    const char* roles[3] = {"k", "l", "m"};
    for (int q = 0; q < 3; ++q) {
      FormLabel label{roles[q], idx};
      klm[static_cast<std::size_t>(q)] = src.draw(label, nv, zb, ze);
      const auto cf = klm[static_cast<std::size_t>(q)].coeffs();
      r.forms.push_back({std::move(label), std::vector<Coeff>(cf.begin(), cf.end())});
    }
    return klm;
  };
  // x_v * (l m), x_v * (k m), x_v * (k l) for v in [lo, hi).
  auto tangent = [field, keep](std::array<LinearForm, 3> klm, int lo, int hi) {
    return [klm, field, keep, lo, hi](const Sink& sink) {
      const auto& [kf, lf, mf] = klm;
      std::vector<HomPoly> quads{mul_linear(HomPoly::from_linear(lf), mf, field),
                                 mul_linear(HomPoly::from_linear(kf), mf, field),
                                 mul_linear(HomPoly::from_linear(kf), lf, field)};
      emit_variable_multiples(quads, lo, hi, keep.get(), sink);
    };
  };

  std::int64_t col = 0;
  for (std::int64_t p = 0; p < sh.plan.eta; ++p) {
    auto klm = draw_point({p}, 0, 0);
    r.groups.push_back({col, 3 * (t + 1), tangent(klm, 0, nv)});
    col += 3 * (t + 1);
  }
  for (int j = 0; j < k; ++j)
    for (std::int64_t p = 0; p < sh.plan.mu; ++p) {
      auto klm = draw_point({p, j}, l * j, l * (j + 1));
      r.groups.push_back({col, 3 * l, tangent(klm, l * j, l * (j + 1))});
      col += 3 * l;
    }
  require(col == r.cols, ErrorCode::InvariantViolation, "column count disagrees with the statement shape");
  return r;
}

MatrixRecipe build_statement(const LatticeConfig& c, std::int64_t t, Branch b, int order, FormSource& src,
                             const PrimeField& field) {
  return c.family == Family::Quaternary ? build_degree_induction(c, t, b, order, src, field)
                                        : build_dimension_induction(c, t, b, order, src, field);
}

// ---------------------------------------------------------------------------
// Verification

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void check_memory(const StatementShape& sh, const VerifyOptions& opts) {
  const std::uint64_t need = opts.streaming ? sh.streaming_bytes : sh.dense_bytes;
  if (need <= opts.mem_cap_bytes) return;
  fail(ErrorCode::BudgetExceeded,
       "t=" + std::to_string(sh.t) + " needs about " + std::to_string(need >> 20) + " MiB for " +
           (opts.streaming ? "streamed" : "dense") + " elimination, above the cap of " +
           std::to_string(opts.mem_cap_bytes >> 20) + " MiB" +
           (opts.streaming ? "" : " (raise the cap or enable streaming)"));
}

VerificationOutcome run_attempt(const LatticeConfig& c, std::int64_t t, Branch b, const StatementShape& sh,
                                FormSource& src, const PrimeField& field, const VerifyOptions& opts,
                                ReplaySource* replay) {
  VerificationOutcome out;
  out.family = c.family;
  out.t = t;
  out.order = sh.order;
  out.branch = b;
  out.prime = field.modulus();
  out.rows = sh.rows;
  out.full_rows = sh.full_rows;
  out.cols = sh.cols;
  out.expected = sh.expected;
  out.abundance = sh.abundance;

  const auto t0 = Clock::now();
  MatrixRecipe recipe = build_statement(c, t, b, sh.order, src, field);
  if (replay) replay->check_all_used();
  MatrixDigest digest;
  if (!opts.streaming) {
    const DenseMatrix mat = recipe.materialize(opts.threads);
    out.construct_seconds = seconds_since(t0);
    for (std::int64_t q = 0; q < mat.cols(); ++q) digest.add(mat.column(q));
    const auto t1 = Clock::now();
    RankOptions ro;
    ro.threads = opts.threads;
    ro.progress = opts.progress;
    out.found = rank_mod_p(mat, ro);
    out.rank_seconds = seconds_since(t1);
  } else {
    StreamingRank sr(recipe.rows, field.modulus(), 256, opts.threads);
    double ranking = 0;
    std::int64_t pushed = 0;
    recipe.stream([&](std::span<const Coeff> col) {
      digest.add(col);
      const auto ts = Clock::now();
      sr.push_column(col);
      ranking += seconds_since(ts);
      if (opts.progress && ++pushed % 4096 == 0) opts.progress(pushed, recipe.cols, sr.rank());
    });
    const auto ts = Clock::now();
    out.found = sr.finish();
    ranking += seconds_since(ts);
    out.rank_seconds = ranking;
    out.construct_seconds = std::max(0.0, seconds_since(t0) - ranking);
  }
  out.digest = digest.value();
  out.verdict = out.found == out.expected ? Verdict::True : Verdict::Unverified;
  out.forms = std::move(recipe.forms);
  return out;
}

}  // namespace

VerificationOutcome verify_statement(const LatticeConfig& c, std::int64_t t, Branch b, const VerifyOptions& opts) {
  require(opts.retries >= 0, ErrorCode::InvalidArgument, "retries must be >= 0");
  const PrimeField field(opts.prime);
  const StatementShape sh = statement_shape(c, t, b, opts.order);
  check_memory(sh, opts);
  std::vector<AttemptRecord> attempts;
  VerificationOutcome out;
  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    const std::uint64_t seed = derive_attempt_seed(opts.seed, attempt);
    KeyedSampler sampler(seed, field);
    out = run_attempt(c, t, b, sh, sampler, field, opts, nullptr);
    out.seed = seed;
    out.master_seed = opts.seed;
    out.attempt = attempt;
    out.retries = opts.retries;
    out.resamples = sampler.resamples();
    attempts.push_back({seed, out.found});
    if (out.verdict == Verdict::True) break;
  }
  out.attempts = std::move(attempts);
  return out;
}

VerificationOutcome rebuild_statement(const LatticeConfig& c, std::int64_t t, Branch b, int order,
                                      std::uint32_t prime, const std::vector<RecordedForm>& forms,
                                      const VerifyOptions& opts) {
  const PrimeField field(prime);
  const StatementShape sh = statement_shape(c, t, b, order);
  check_memory(sh, opts);
  ReplaySource replay(forms, field);
  VerificationOutcome out = run_attempt(c, t, b, sh, replay, field, opts, &replay);
  out.attempts.push_back({0, out.found});
  return out;
}

std::vector<ScheduledStatement> base_case_schedule(const LatticeConfig& c, std::optional<std::int64_t> t_cap) {
  const std::int64_t lo = c.family == Family::Quaternary ? 2 : 1;
  const std::int64_t hi = t_cap ? std::min(*t_cap, c.t0) : c.t0;
  std::vector<ScheduledStatement> out;
  for (std::int64_t t = lo; t <= hi; ++t)
    for (Branch b : {Branch::S1, Branch::S2}) out.push_back({t, c.order(t), b});
  return out;
}

std::vector<ArithmeticViolation> induction_arithmetic_check(const LatticeConfig& c, std::int64_t t_lo,
                                                            std::int64_t t_hi) {
  std::vector<ArithmeticViolation> out;
  const IntFunction n_fn = [&c](std::int64_t u) { return c.N(u); };
  auto guarded = [&](const std::string& name, std::int64_t t, int i, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      out.push_back({name, t, i, e.what()});
    }
  };
  const std::int64_t top_diff = backward_diff(n_fn, c.top_order, c.t0, c.step);
  for (std::int64_t t = std::max<std::int64_t>(t_lo, 1); t <= t_hi; ++t) {
    const int k = c.order(t);
    for (Branch b : {Branch::S1, Branch::S2}) {
      for (int i = 0; i < k; ++i)
        guarded("grassmann", t, i, [&] {
          const std::int64_t lhs = a_i(c, i, t, b);
          const std::int64_t rhs = a_i(c, i, t - c.step, b) + a_i(c, i + 1, t, b) - c.N(t - c.step);
          if (lhs != rhs)
            out.push_back({"grassmann", t, i,
                           std::string(to_string(b)) + ": " + std::to_string(lhs) + " != " + std::to_string(rhs)});
        });
      if (t >= c.t0)
        guarded("equiabundance", t, c.top_order, [&] {
          const std::int64_t a = a_i(c, c.top_order, t, b);
          if (a != c.N(t))
            out.push_back({"equiabundance", t, c.top_order,
                           std::string(to_string(b)) + ": a=" + std::to_string(a) + " N=" + std::to_string(c.N(t))});
        });
    }
    if (t >= c.t0) {
      const std::int64_t d = backward_diff(n_fn, c.top_order, t, c.step);
      if (d != top_diff)
        out.push_back({"top-difference", t, c.top_order, std::to_string(d) + " != " + std::to_string(top_diff)});
    }
  }
  return out;
}

}  // namespace chowdefect
