#pragma once

// Exact finite calculus with a fixed step: backward differences, Newton's
// backward formula and quasipolynomials with rational coefficients.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace chowdefect {

using Rational = boost::multiprecision::cpp_rational;
using IntFunction = std::function<std::int64_t(std::int64_t)>;

/// C(n, k) for 0 <= k <= n, and 0 whenever k < 0, k > n or n < 0.
/// Throws Overflow if the value does not fit in 64 bits.
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// A function on the integers given by one polynomial per residue class
/// modulo `period`. All residue polynomials have the same degree and the
/// same leading coefficient; every value is required to be an integer.
class Quasipolynomial {
 public:
  /// residue_coeffs[r] holds the coefficients (constant term first) of the
  /// polynomial used when t = r (mod period). Shorter lists are zero-padded.
  explicit Quasipolynomial(std::vector<std::vector<Rational>> residue_coeffs);

  static Quasipolynomial constant(std::int64_t value);
  /// Single polynomial, i.e. a quasipolynomial of period 1.
  static Quasipolynomial polynomial(std::vector<Rational> coeffs);

  /// f_{t mod period}(t). Throws NonIntegralValue if the result is not an
  /// integer and Overflow if it does not fit in 64 bits.
  std::int64_t operator()(std::int64_t t) const;

  std::int64_t period() const { return static_cast<std::int64_t>(residues_.size()); }
  int degree() const { return degree_; }
  const Rational& leading_coefficient() const { return leading_; }
  const std::vector<Rational>& residue(std::int64_t r) const { return residues_.at(r); }

  /// q + c.
  Quasipolynomial plus(std::int64_t c) const;

  IntFunction as_function() const;

 private:
  std::vector<std::vector<Rational>> residues_;
  int degree_ = 0;
  Rational leading_;
};

/// Order and step of an iterated backward difference.
struct StepDifference {
  std::int64_t step = 1;
  int order = 0;

  StepDifference(std::int64_t step_, int order_);
};

/// sum_{j=0}^{order} (-1)^j C(order, j) f(t - j*step).
std::int64_t backward_diff(const IntFunction& f, int order, std::int64_t t, std::int64_t step);
std::int64_t backward_diff(const IntFunction& f, const StepDifference& op, std::int64_t t);

/// sum_{j=0}^{n} C(n, j) * nabla^{n-j} f(t - j*step). Equals f(t) for every f;
/// only used to cross-check backward_diff.
std::int64_t newton_reconstruct(const IntFunction& f, int n, std::int64_t t, std::int64_t step);

/// The 27 residue values a(27q + r), r = 0..26, entering s1.
std::array<std::int64_t, 27> proof_a_table();

struct ProofFunctions {
  Quasipolynomial s1;
  Quasipolynomial s2;
};

/// s1(t) = t^2/18 + 17t/54 + a(t)/27 and s2 = s1 + 1.
ProofFunctions make_proof_functions();
/// Same construction with a caller-supplied a-table (mutation testing).
ProofFunctions make_proof_functions(std::span<const std::int64_t, 27> a_table);

}  // namespace chowdefect
