#include "chowdefect/finite_calculus.hpp"

#include <limits>
#include <string>

#include "chowdefect/checked.hpp"
#include "chowdefect/error.hpp"

namespace chowdefect {

namespace {

std::int64_t to_int64(const boost::multiprecision::cpp_int& v) {
  static const boost::multiprecision::cpp_int lo = std::numeric_limits<std::int64_t>::min();
  static const boost::multiprecision::cpp_int hi = std::numeric_limits<std::int64_t>::max();
  if (v < lo || v > hi) fail(ErrorCode::Overflow, "quasipolynomial value exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  // Running product stays an exact binomial, C(n-k+i, i), after each step.
  __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::int64_t>::max())
      fail(ErrorCode::Overflow, "binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds 64 bits");
  }
  return static_cast<std::int64_t>(acc);
}

Quasipolynomial::Quasipolynomial(std::vector<std::vector<Rational>> residue_coeffs)
    : residues_(std::move(residue_coeffs)) {
  require(!residues_.empty(), ErrorCode::InvalidArgument, "quasipolynomial needs period >= 1");
  std::size_t width = 1;
  for (auto& r : residues_) {
    while (!r.empty() && r.back() == 0) r.pop_back();
    width = std::max(width, r.size());
  }
  for (auto& r : residues_) r.resize(width, Rational(0));
  degree_ = static_cast<int>(width) - 1;
  leading_ = residues_.front().back();
  for (std::size_t r = 1; r < residues_.size(); ++r) {
    if (residues_[r].back() != leading_)
      fail(ErrorCode::InvariantViolation,
           "residue polynomials of a quasipolynomial must share one leading coefficient (residue " +
               std::to_string(r) + " differs)");
  }
}

Quasipolynomial Quasipolynomial::constant(std::int64_t value) {
  return Quasipolynomial({{Rational(value)}});
}

Quasipolynomial Quasipolynomial::polynomial(std::vector<Rational> coeffs) {
  return Quasipolynomial({std::move(coeffs)});
}

std::int64_t Quasipolynomial::operator()(std::int64_t t) const {
  const std::int64_t p = period();
  const std::int64_t r = ((t % p) + p) % p;
  const auto& c = residues_[static_cast<std::size_t>(r)];
  Rational acc = 0;
  const Rational x = t;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  if (boost::multiprecision::denominator(acc) != 1)
    fail(ErrorCode::NonIntegralValue,
         "quasipolynomial takes the non-integral value " + acc.str() + " at t = " + std::to_string(t));
  return to_int64(boost::multiprecision::numerator(acc));
}

Quasipolynomial Quasipolynomial::plus(std::int64_t c) const {
  auto res = residues_;
  for (auto& r : res) r[0] += c;
  return Quasipolynomial(std::move(res));
}

IntFunction Quasipolynomial::as_function() const {
  return [q = *this](std::int64_t t) { return q(t); };
}

StepDifference::StepDifference(std::int64_t step_, int order_) : step(step_), order(order_) {
  require(step >= 1, ErrorCode::InvalidArgument, "difference step must be >= 1");
  require(order >= 0, ErrorCode::InvalidArgument, "difference order must be >= 0");
}

std::int64_t backward_diff(const IntFunction& f, int order, std::int64_t t, std::int64_t step) {
  require(order >= 0, ErrorCode::InvalidArgument, "difference order must be >= 0");
  std::int64_t acc = 0;
  for (int j = 0; j <= order; ++j) {
    const std::int64_t term =
        checked::mul(binomial(order, j), f(checked::sub(t, checked::mul(j, step))));
    acc = (j % 2 == 0) ? checked::add(acc, term) : checked::sub(acc, term);
  }
  return acc;
}

std::int64_t backward_diff(const IntFunction& f, const StepDifference& op, std::int64_t t) {
  return backward_diff(f, op.order, t, op.step);
}

std::int64_t newton_reconstruct(const IntFunction& f, int n, std::int64_t t, std::int64_t step) {
  require(n >= 0, ErrorCode::InvalidArgument, "Newton order must be >= 0");
  std::int64_t acc = 0;
  for (int j = 0; j <= n; ++j) {
    const std::int64_t shifted = checked::sub(t, checked::mul(j, step));
    acc = checked::add(acc, checked::mul(binomial(n, j), backward_diff(f, n - j, shifted, step)));
  }
  return acc;
}

std::array<std::int64_t, 27> proof_a_table() {
  return {0,  -10, 4,  -12, -4, 1,  3,  2,  -2, -9, 8,  -5, 6, -13,
          -8, -6,  -7, -11, 9,  -1, 13, -3, 5,  10, 12, 11, 7};
}

ProofFunctions make_proof_functions() {
  const auto table = proof_a_table();
  return make_proof_functions(std::span<const std::int64_t, 27>(table));
}

ProofFunctions make_proof_functions(std::span<const std::int64_t, 27> a_table) {
  std::vector<std::vector<Rational>> res;
  res.reserve(27);
  for (std::int64_t a : a_table) res.push_back({Rational(a, 27), Rational(17, 54), Rational(1, 18)});
  Quasipolynomial s1(std::move(res));
  Quasipolynomial s2 = s1.plus(1);
  return {std::move(s1), std::move(s2)};
}

}  // namespace chowdefect
