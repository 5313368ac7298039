#pragma once

// Dense homogeneous polynomials over Z_P in the lex monomial basis E_{n,d}:
// x_0^d, x_0^{d-1} x_1, ..., x_n^d.

#include <cstdint>
#include <span>
#include <vector>

namespace chowdefect {

/// Field elements are stored in 16 bits; every admissible prime is < 2^15.
using Coeff = std::uint16_t;

inline constexpr std::uint32_t kDefaultPrime = 8191;
inline constexpr std::uint32_t kMaxPrime = 1u << 15;

bool is_prime(std::uint64_t p);

class PrimeField {
 public:
  /// Throws InvalidArgument unless p is a prime below 2^15.
  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t modulus() const { return p_; }
  Coeff reduce(std::uint64_t v) const { return static_cast<Coeff>(v % p_); }
  Coeff add(Coeff a, Coeff b) const { return reduce(std::uint64_t{a} + b); }
  Coeff sub(Coeff a, Coeff b) const { return reduce(std::uint64_t{a} + p_ - b); }
  Coeff mul(Coeff a, Coeff b) const { return reduce(std::uint64_t{a} * b); }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : static_cast<Coeff>(p_ - a); }
  /// Multiplicative inverse; a must be nonzero.
  Coeff inv(Coeff a) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

/// c_0 x_0 + ... + c_n x_n. Never the zero form.
class LinearForm {
 public:
  LinearForm(std::vector<Coeff> coeffs, const PrimeField& field);

  int n() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Coeff> coeffs() const { return coeffs_; }
  Coeff operator[](int j) const { return coeffs_[static_cast<std::size_t>(j)]; }

  bool operator==(const LinearForm&) const = default;

 private:
  std::vector<Coeff> coeffs_;
};

/// Degree-d form in n+1 variables, C(n+d, d) coefficients in lex order.
class HomPoly {
 public:
  HomPoly(int n, int d);  // zero polynomial
  HomPoly(int n, int d, std::vector<Coeff> coeffs);

  static HomPoly one(int n);
  static HomPoly from_linear(const LinearForm& f);

  int n() const { return n_; }
  int degree() const { return d_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const Coeff> coeffs() const { return coeffs_; }
  std::span<Coeff> coeffs() { return coeffs_; }
  Coeff operator[](std::size_t z) const { return coeffs_[z]; }

  bool operator==(const HomPoly&) const = default;

 private:
  int n_;
  int d_;
  std::vector<Coeff> coeffs_;
};

/// dim S^d k^{n+1} = C(n+d, d), overflow-checked.
std::int64_t basis_size(int n, int d);

/// 1-based lex position z of x_{i_1} ... x_{i_d}; indices must be
/// nondecreasing and in 0..n. The empty tuple (d = 0) has position 1.
std::int64_t monomial_rank(std::span<const int> indices, int n);
/// Inverse of monomial_rank.
std::vector<int> monomial_unrank(std::int64_t z, int n, int d);
/// 0-based lex position of the monomial with exponent vector e (size n+1).
std::int64_t exponent_position(std::span<const int> exponents);

/// f * l.
HomPoly mul_linear(const HomPoly& f, const LinearForm& l, const PrimeField& field);
/// f * x_j (a coordinate permutation, no arithmetic).
HomPoly mul_variable(const HomPoly& f, int j);
/// f * x^u for an exponent vector u.
HomPoly mul_monomial(const HomPoly& f, std::span<const int> exponents);

/// ((l_1 l_2) l_3) ... l_d. Throws EmptyProduct / DimensionMismatch.
HomPoly product_of_linear_forms(std::span<const LinearForm> forms, const PrimeField& field);

/// Symmetrised d-fold tensor product; the reference used to validate
/// mul_linear. Throws BudgetExceeded when (n+1)^d > 10^7.
HomPoly naive_product_oracle(std::span<const LinearForm> forms, const PrimeField& field);

/// base * prod_{gamma != beta} factors[gamma] for every beta, computed with a
/// divide-and-conquer tree (O(d log d) linear multiplications).
std::vector<HomPoly> leave_one_out_products(const HomPoly& base, std::span<const LinearForm> factors,
                                            const PrimeField& field);

}  // namespace chowdefect
