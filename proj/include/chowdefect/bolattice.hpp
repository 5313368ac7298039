#pragma once

// Brambilla-Ottaviani lattice induction for secant varieties of Chow varieties:
// statement arithmetic, point plans, the two base-case matrix builders and the
// verification loop.
//
//   quaternary: X(t) = C_{t,3}, induction on the degree t;
//   cubics:     X(t) = C_{3,t}, induction on the number of variables t+1.
//
// Both share N(t) = C(t+3,3), m(t) = 3t+1, step l = 27, K0 = 3, t0 = 82.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chowdefect/finite_calculus.hpp"
#include "chowdefect/gflinalg.hpp"
#include "chowdefect/sampling.hpp"

namespace chowdefect {

enum class Family { Quaternary, Cubics };
enum class Branch { S1 = 1, S2 = 2 };
enum class Abundance { Sub, Super, Equi };
enum class Verdict { True, Unverified };

const char* to_string(Family f);
const char* to_string(Branch b);
const char* to_string(Abundance a);  // SUBABUNDANT, ...
const char* to_string(Verdict v);    // TRUE / UNVERIFIED
std::optional<Family> parse_family(const std::string& s);
std::optional<Branch> parse_branch(const std::string& s);

struct LatticeConfig {
  Family family = Family::Quaternary;
  std::int64_t step = 27;
  int top_order = 3;
  std::int64_t t0 = 82;
  ProofFunctions s;

  static LatticeConfig proof(Family family);
  /// The proof lattice with s1, s2 built from a different a-table.
  static LatticeConfig with_a_table(Family family, std::span<const std::int64_t, 27> a_table);

  std::int64_t N(std::int64_t t) const;
  std::int64_t m(std::int64_t t) const;
  const Quasipolynomial& s_of(Branch b) const { return b == Branch::S1 ? s.s1 : s.s2; }
  IntFunction s_fn(Branch b) const;
  /// K(t) = min{ceil(t/l) - 1, K0}.
  int order(std::int64_t t) const;
  /// Variables of the ambient space: 4 for quaternary, t+1 for cubics.
  int nvars(std::int64_t t) const;
  /// Degree of the forms: t for quaternary, 3 for cubics.
  int degree(std::int64_t t) const;
};

/// N - nabla^i N + i * nabla m * nabla^{i-1} s(t - l) + m * nabla^i s(t); the
/// middle term is absent for i = 0.
std::int64_t a_i(const LatticeConfig& c, int i, std::int64_t t, Branch b);
Abundance abundance(const LatticeConfig& c, int i, std::int64_t t, Branch b);

struct PointPlan {
  int order = 0;
  std::int64_t eta = 0;  // generic points
  std::int64_t mu = 0;   // points on each of the `order` subspaces
};

/// eta = nabla^i s(t), mu = nabla^{i-1} s(t - l). Throws NegativeCount if a
/// count is negative or the point-count identity fails. order < 0 means K(t).
PointPlan point_plan(const LatticeConfig& c, std::int64_t t, Branch b, int order = -1);

/// |Z_1 u ... u Z_i| = sum over nonempty I of (-1)^{|I|+1} N(t - |I| l).
std::int64_t union_z_size(const LatticeConfig& c, std::int64_t t, int order);

struct StatementShape {
  std::int64_t t = 0;
  int order = 0;
  Branch branch = Branch::S1;
  PointPlan plan;
  std::int64_t points = 0;     // s_b(t)
  std::int64_t full_rows = 0;  // N(t)
  std::int64_t rows = 0;       // rows actually ranked
  std::int64_t cols = 0;
  std::int64_t a = 0;
  std::int64_t expected = 0;
  Abundance abundance = Abundance::Equi;
  std::uint64_t dense_bytes = 0;
  std::uint64_t streaming_bytes = 0;
};

StatementShape statement_shape(const LatticeConfig& c, std::int64_t t, Branch b, int order = -1);

/// Columns of T in a fixed order, grouped so independent groups can be
/// generated concurrently.
struct MatrixRecipe {
  struct Group {
    std::int64_t first_col;
    std::int64_t cols;
    std::function<void(const std::function<void(std::span<const Coeff>)>&)> emit;
  };
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::uint32_t prime = 0;
  std::vector<Group> groups;
  std::vector<RecordedForm> forms;

  DenseMatrix materialize(int threads) const;
  void stream(const std::function<void(std::span<const Coeff>)>& sink) const;
};

/// Induction on degree: T = [R1 | R2 | R3] with C(t+3,3) rows.
MatrixRecipe build_degree_induction(const LatticeConfig& c, std::int64_t t, Branch b, int order, FormSource& src,
                                    const PrimeField& field);
/// Induction on dimension: T restricted to the rows Y outside
/// every Z_j.
MatrixRecipe build_dimension_induction(const LatticeConfig& c, std::int64_t t, Branch b, int order,
                                       FormSource& src, const PrimeField& field);
MatrixRecipe build_statement(const LatticeConfig& c, std::int64_t t, Branch b, int order, FormSource& src,
                             const PrimeField& field);

/// 0-based positions of the rows of Y for the cubic builder, increasing.
std::vector<std::int64_t> cubic_row_set(std::int64_t t, std::int64_t step, int order);

/// FNV-1a over the ranked matrix, column-major, little-endian 16-bit entries.
class MatrixDigest {
 public:
  void add(std::span<const Coeff> column);
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

struct VerifyOptions {
  int order = -1;
  std::uint32_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  int retries = 2;
  int threads = 1;
  std::uint64_t mem_cap_bytes = std::uint64_t{8} << 30;
  bool streaming = false;
  RankProgress progress;
};

struct AttemptRecord {
  std::uint64_t seed;
  std::int64_t found;
};

struct VerificationOutcome {
  Family family = Family::Quaternary;
  std::int64_t t = 0;
  int order = 0;
  Branch branch = Branch::S1;
  std::uint32_t prime = kDefaultPrime;
  std::uint64_t seed = 0;         // seed of the reported attempt
  std::uint64_t master_seed = 0;  // seed requested by the caller
  int attempt = 0;
  int retries = 0;
  std::int64_t rows = 0;
  std::int64_t full_rows = 0;
  std::int64_t cols = 0;
  std::int64_t expected = 0;
  std::int64_t found = 0;
  Abundance abundance = Abundance::Equi;
  Verdict verdict = Verdict::Unverified;
  std::int64_t resamples = 0;
  double construct_seconds = 0;
  double rank_seconds = 0;
  std::uint64_t digest = 0;
  std::vector<RecordedForm> forms;
  std::vector<AttemptRecord> attempts;
};

/// Builds, ranks and compares; on a rank deficit retries with derived seeds.
/// Throws BudgetExceeded if the chosen elimination mode needs more memory
/// than opts.mem_cap_bytes.
VerificationOutcome verify_statement(const LatticeConfig& c, std::int64_t t, Branch b, const VerifyOptions& opts);

/// Same as one attempt of verify_statement but with the given forms.
VerificationOutcome rebuild_statement(const LatticeConfig& c, std::int64_t t, Branch b, int order,
                                      std::uint32_t prime, const std::vector<RecordedForm>& forms,
                                      const VerifyOptions& opts);

struct ScheduledStatement {
  std::int64_t t;
  int order;
  Branch branch;
};

/// Every base case needed by the induction: t = 2..t0 (quaternary) or
/// t = 1..t0 (cubics), at order K(t), both branches; optionally capped.
std::vector<ScheduledStatement> base_case_schedule(const LatticeConfig& c, std::optional<std::int64_t> t_cap = {});

struct ArithmeticViolation {
  std::string identity;
  std::int64_t t;
  int i;
  std::string detail;
};

/// Grassmann recursion, a_{K0}(t) = N(t) for t >= t0 and the constancy of
/// nabla^{K0} N beyond t0, over t in [t_lo, t_hi].
std::vector<ArithmeticViolation> induction_arithmetic_check(const LatticeConfig& c, std::int64_t t_lo,
                                                            std::int64_t t_hi);

}  // namespace chowdefect
