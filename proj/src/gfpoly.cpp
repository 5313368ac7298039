#include "chowdefect/gfpoly.hpp"

#include <algorithm>
#include <string>

#include "chowdefect/checked.hpp"
#include "chowdefect/error.hpp"
#include "chowdefect/finite_calculus.hpp"

namespace chowdefect {

namespace {

// sizes(k, v) = dim S^k of the span of x_v..x_n = C(n - v + k, k).
class BlockSizes {
 public:
  BlockSizes(int n, int max_degree) : n_(n), stride_(static_cast<std::size_t>(n) + 1) {
    table_.resize(stride_ * (static_cast<std::size_t>(max_degree) + 1));
    for (int k = 0; k <= max_degree; ++k)
      for (int v = 0; v <= n; ++v)
        table_[static_cast<std::size_t>(k) * stride_ + static_cast<std::size_t>(v)] =
            static_cast<std::size_t>(basis_size(n - v, k));
  }
  std::size_t operator()(int k, int v) const {
    return table_[static_cast<std::size_t>(k) * stride_ + static_cast<std::size_t>(v)];
  }
  int n() const { return n_; }

 private:
  int n_;
  std::size_t stride_;
  std::vector<std::size_t> table_;
};

// Number of nondecreasing tuples that start with some c in [a, b) at a position
// followed by r free slots: sum_{c=a}^{b-1} C(n - c + r, r).
std::int64_t block_span(int n, int a, int b, int r) {
  return binomial(n - a + r + 1, r + 1) - binomial(n - b + r + 1, r + 1);
}

// out (S^{k+1} over x_v..x_n) += f (S^k over x_v..x_n) * (c_v x_v + ... + c_n x_n).
// The lex block structure S^k = x_v S^{k-1} (+) S^k(x_{v+1}..x_n) lets every
// product f[m] * c_j land in its slot without ranking the monomial.
void mul_linear_into(const Coeff* f, int k, int v, const Coeff* c, const BlockSizes& sz, std::uint64_t* out) {
  const int n = sz.n();
  if (k == 0) {
    const std::uint64_t a = f[0];
    for (int j = v; j <= n; ++j) out[j - v] += a * c[j];
    return;
  }
  if (v == n) {
    out[0] += std::uint64_t{f[0]} * c[n];
    return;
  }
  const std::size_t head = sz(k - 1, v);   // f' : monomials containing x_v
  const std::size_t tail = sz(k, v + 1);   // f'': monomials free of x_v
  mul_linear_into(f, k - 1, v, c, sz, out);
  const std::uint64_t cv = c[v];
  const Coeff* f2 = f + head;
  if (cv != 0) {
    std::uint64_t* dst = out + head;
    for (std::size_t q = 0; q < tail; ++q) dst[q] += cv * f2[q];
  }
  mul_linear_into(f2, k, v + 1, c, sz, out + sz(k, v));
}

// out (S^{k+1} over x_v..x_n) = f * x_j, j >= v.
void mul_variable_into(const Coeff* f, int k, int v, int j, const BlockSizes& sz, Coeff* out) {
  if (v == j) {
    std::copy(f, f + sz(k, v), out);
    return;
  }
  if (k == 0) {
    out[j - v] = f[0];
    return;
  }
  mul_variable_into(f, k - 1, v, j, sz, out);
  mul_variable_into(f + sz(k - 1, v), k, v + 1, j, sz, out + sz(k, v));
}

void leave_one_out_rec(const HomPoly& acc, std::span<const LinearForm> factors, std::size_t lo, std::size_t hi,
                       const PrimeField& field, std::vector<HomPoly>& out) {
  if (hi - lo == 1) {
    out[lo] = acc;
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  HomPoly left = acc;
  for (std::size_t g = mid; g < hi; ++g) left = mul_linear(left, factors[g], field);
  leave_one_out_rec(left, factors, lo, mid, field, out);
  HomPoly right = acc;
  for (std::size_t g = lo; g < mid; ++g) right = mul_linear(right, factors[g], field);
  leave_one_out_rec(right, factors, mid, hi, field, out);
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  require(p < kMaxPrime && is_prime(p), ErrorCode::InvalidArgument,
          "modulus " + std::to_string(p) + " is not a prime below 2^15");
}

Coeff PrimeField::inv(Coeff a) const {
  require(a % p_ != 0, ErrorCode::DomainError, "zero has no inverse");
  std::int64_t r0 = p_, r1 = a % p_, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  return static_cast<Coeff>(((t0 % p_) + p_) % p_);
}

LinearForm::LinearForm(std::vector<Coeff> coeffs, const PrimeField& field) : coeffs_(std::move(coeffs)) {
  require(!coeffs_.empty(), ErrorCode::InvalidArgument, "linear form needs at least one variable");
  bool nonzero = false;
  for (Coeff c : coeffs_) {
    require(c < field.modulus(), ErrorCode::InvariantViolation,
            "linear form coefficient " + std::to_string(c) + " is not reduced mod " +
                std::to_string(field.modulus()));
    nonzero |= (c != 0);
  }
  require(nonzero, ErrorCode::InvariantViolation, "linear form is zero");
}

HomPoly::HomPoly(int n, int d) : n_(n), d_(d) {
  require(n >= 0 && d >= 0, ErrorCode::InvalidArgument, "negative dimension or degree");
  coeffs_.assign(static_cast<std::size_t>(basis_size(n, d)), 0);
}

HomPoly::HomPoly(int n, int d, std::vector<Coeff> coeffs) : n_(n), d_(d), coeffs_(std::move(coeffs)) {
  require(n >= 0 && d >= 0, ErrorCode::InvalidArgument, "negative dimension or degree");
  require(static_cast<std::int64_t>(coeffs_.size()) == basis_size(n, d), ErrorCode::DimensionMismatch,
          "coefficient vector length differs from C(n+d, d)");
}

HomPoly HomPoly::one(int n) { return HomPoly(n, 0, {1}); }

HomPoly HomPoly::from_linear(const LinearForm& f) {
  return HomPoly(f.n(), 1, std::vector<Coeff>(f.coeffs().begin(), f.coeffs().end()));
}

std::int64_t basis_size(int n, int d) {
  require(n >= 0 && d >= 0, ErrorCode::InvalidArgument, "negative dimension or degree");
  return binomial(static_cast<std::int64_t>(n) + d, d);
}

std::int64_t monomial_rank(std::span<const int> indices, int n) {
  require(n >= 0, ErrorCode::IndexOutOfRange, "negative dimension");
  const int d = static_cast<int>(indices.size());
  std::int64_t pos = 0;
  int prev = 0;
  for (int k = 1; k <= d; ++k) {
    const int cur = indices[static_cast<std::size_t>(k - 1)];
    require(cur >= prev && cur <= n, ErrorCode::IndexOutOfRange,
            "monomial indices must be nondecreasing and within 0.." + std::to_string(n));
    if (cur > prev) pos += block_span(n, prev, cur, d - k);
    prev = cur;
  }
  return pos + 1;
}

std::vector<int> monomial_unrank(std::int64_t z, int n, int d) {
  require(n >= 0 && d >= 0, ErrorCode::IndexOutOfRange, "negative dimension or degree");
  require(z >= 1 && z <= basis_size(n, d), ErrorCode::IndexOutOfRange,
          "position " + std::to_string(z) + " outside 1..C(n+d,d)");
  std::int64_t pos = z - 1;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(d));
  int c = 0;
  for (int k = 1; k <= d; ++k) {
    const int r = d - k;
    for (;;) {
      const std::int64_t block = binomial(n - c + r, r);
      if (pos < block) break;
      pos -= block;
      ++c;
    }
    out.push_back(c);
  }
  return out;
}

std::int64_t exponent_position(std::span<const int> exponents) {
  const int n = static_cast<int>(exponents.size()) - 1;
  int d = 0;
  for (int e : exponents) {
    require(e >= 0, ErrorCode::IndexOutOfRange, "negative exponent");
    d += e;
  }
  std::int64_t pos = 0;
  int consumed = 0;
  int prev = 0;
  for (int v = 0; v <= n; ++v) {
    const int e = exponents[static_cast<std::size_t>(v)];
    if (e == 0) continue;
    if (v > prev) pos += block_span(n, prev, v, d - consumed - 1);
    prev = v;
    consumed += e;
  }
  return pos;
}

HomPoly mul_linear(const HomPoly& f, const LinearForm& l, const PrimeField& field) {
  require(f.n() == l.n(), ErrorCode::DimensionMismatch, "polynomial and linear form live in different rings");
  const int n = f.n();
  const int k = f.degree();
  BlockSizes sz(n, k + 1);
  std::vector<std::uint64_t> acc(sz(k + 1, 0), 0);
  mul_linear_into(f.coeffs().data(), k, 0, l.coeffs().data(), sz, acc.data());
  std::vector<Coeff> out(acc.size());
  for (std::size_t z = 0; z < acc.size(); ++z) out[z] = field.reduce(acc[z]);
  return HomPoly(n, k + 1, std::move(out));
}

HomPoly mul_variable(const HomPoly& f, int j) {
  require(j >= 0 && j <= f.n(), ErrorCode::IndexOutOfRange, "variable index out of range");
  BlockSizes sz(f.n(), f.degree() + 1);
  std::vector<Coeff> out(sz(f.degree() + 1, 0), 0);
  mul_variable_into(f.coeffs().data(), f.degree(), 0, j, sz, out.data());
  return HomPoly(f.n(), f.degree() + 1, std::move(out));
}

HomPoly mul_monomial(const HomPoly& f, std::span<const int> exponents) {
  const int n = f.n();
  require(static_cast<int>(exponents.size()) == n + 1, ErrorCode::DimensionMismatch,
          "exponent vector length differs from n+1");
  int e_deg = 0;
  for (int e : exponents) {
    require(e >= 0, ErrorCode::IndexOutOfRange, "negative exponent");
    e_deg += e;
  }
  const int d = f.degree();
  HomPoly out(n, d + e_deg);
  std::vector<int> tuple(static_cast<std::size_t>(d), 0);
  std::vector<int> expo(exponents.begin(), exponents.end());
  expo[0] += d;
  auto dst = out.coeffs();
  for (std::size_t z = 0; z < f.size(); ++z) {
    dst[static_cast<std::size_t>(exponent_position(expo))] = f[z];
    // Advance to the next nondecreasing tuple in lex order.
    int k = d - 1;
    while (k >= 0 && tuple[static_cast<std::size_t>(k)] == n) --k;
    if (k < 0) break;
    const int next = tuple[static_cast<std::size_t>(k)] + 1;
    for (int q = k; q < d; ++q) {
      --expo[static_cast<std::size_t>(tuple[static_cast<std::size_t>(q)])];
      tuple[static_cast<std::size_t>(q)] = next;
      ++expo[static_cast<std::size_t>(next)];
    }
  }
  return out;
}

HomPoly product_of_linear_forms(std::span<const LinearForm> forms, const PrimeField& field) {
  require(!forms.empty(), ErrorCode::EmptyProduct, "product of zero linear forms");
  const int n = forms.front().n();
  HomPoly acc = HomPoly::from_linear(forms.front());
  for (std::size_t g = 1; g < forms.size(); ++g) {
    require(forms[g].n() == n, ErrorCode::DimensionMismatch, "linear forms in different rings");
    acc = mul_linear(acc, forms[g], field);
  }
  return acc;
}

HomPoly naive_product_oracle(std::span<const LinearForm> forms, const PrimeField& field) {
  require(!forms.empty(), ErrorCode::EmptyProduct, "product of zero linear forms");
  const int n = forms.front().n();
  const int d = static_cast<int>(forms.size());
  for (const auto& f : forms)
    require(f.n() == n, ErrorCode::DimensionMismatch, "linear forms in different rings");
  std::uint64_t budget = 1;
  for (int q = 0; q < d; ++q) {
    budget *= static_cast<std::uint64_t>(n + 1);
    require(budget <= 10'000'000, ErrorCode::BudgetExceeded, "(n+1)^d exceeds the oracle budget of 10^7");
  }
  HomPoly out(n, d);
  auto dst = out.coeffs();
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::vector<int> sorted(static_cast<std::size_t>(d));
  for (std::uint64_t step = 0; step < budget; ++step) {
    Coeff term = 1;
    for (int q = 0; q < d; ++q) term = field.mul(term, forms[static_cast<std::size_t>(q)][idx[static_cast<std::size_t>(q)]]);
    if (term != 0) {
      sorted = idx;
      std::sort(sorted.begin(), sorted.end());
      auto z = static_cast<std::size_t>(monomial_rank(sorted, n) - 1);
      dst[z] = field.add(dst[z], term);
    }
    for (int q = d - 1; q >= 0; --q) {
      if (++idx[static_cast<std::size_t>(q)] <= n) break;
      idx[static_cast<std::size_t>(q)] = 0;
    }
  }
  return out;
}

std::vector<HomPoly> leave_one_out_products(const HomPoly& base, std::span<const LinearForm> factors,
                                            const PrimeField& field) {
  for (const auto& f : factors)
    require(f.n() == base.n(), ErrorCode::DimensionMismatch, "linear forms in different rings");
  std::vector<HomPoly> out(factors.size(), HomPoly(base.n(), 0));
  if (factors.empty()) return out;
  leave_one_out_rec(base, factors, 0, factors.size(), field, out);
  return out;
}

}  // namespace chowdefect
