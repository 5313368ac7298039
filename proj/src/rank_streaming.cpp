// Left-looking rank accumulation. The basis is kept fully reduced: basis
// vector k is 1 at row piv[k] and 0 at every other pivot row, so projecting a
// new panel costs one gemm against the rows of the panel at the pivot rows.

#include <algorithm>

#include "chowdefect/checked.hpp"
#include "chowdefect/error.hpp"
#include "chowdefect/gflinalg.hpp"
#include "mod_kernels.hpp"

namespace chowdefect {

namespace {
constexpr std::int64_t kBaseWidth = 16;
constexpr std::int64_t kTileBudget = std::int64_t{1} << 24;  // doubles per converted row tile

std::int64_t tile_rows(std::int64_t m, std::int64_t r) {
  const std::int64_t t = kTileBudget / std::max<std::int64_t>(r, 1);
  return std::clamp<std::int64_t>(t, 64, std::max<std::int64_t>(m, 64));
}
}  // namespace

struct StreamingRank::Impl {
  std::int64_t m;
  std::uint32_t p;
  std::int64_t b;
  int threads;
  detail::ModP mod;
  std::vector<double> inv;
  std::vector<Coeff> basis;  // m x r, column-major
  std::vector<std::int64_t> piv;
  std::vector<double> panel;  // m x b
  std::int64_t pending = 0;

  Impl(std::int64_t rows, std::uint32_t modulus, std::int64_t width, int nthreads)
      : m(rows), p(modulus), b(width), threads(nthreads), mod(modulus), inv(detail::inverse_table(modulus)) {
    panel.assign(static_cast<std::size_t>(checked::mul(m, b)), 0.0);
  }

  std::int64_t r() const { return static_cast<std::int64_t>(piv.size()); }
  double* wcol(std::int64_t c) { return panel.data() + c * m; }

  void flush() {
    const std::int64_t w = pending;
    pending = 0;
    if (w == 0 || r() == m) return;
    detail::set_gemm_threads(threads);
    const std::int64_t rk = r();
    if (rk > 0) project(w);
    std::vector<std::int64_t> newpiv;
    const std::int64_t k = gauss_jordan(0, w, newpiv);
    if (k == 0) return;
    if (rk > 0) update_basis(k, newpiv);
    basis.resize(static_cast<std::size_t>((rk + k) * m));
    for (std::int64_t q = 0; q < k; ++q) {
      const double* x = wcol(q);
      Coeff* dst = basis.data() + (rk + q) * m;
      for (std::int64_t i = 0; i < m; ++i) dst[i] = static_cast<Coeff>(x[i]);
    }
    piv.insert(piv.end(), newpiv.begin(), newpiv.end());
  }

  // W <- W - B * W[piv, :]
  void project(std::int64_t w) {
    const std::int64_t rk = r();
    std::vector<double> x(static_cast<std::size_t>(rk * w));
    for (std::int64_t q = 0; q < w; ++q)
      for (std::int64_t k = 0; k < rk; ++k) x[q * rk + k] = wcol(q)[piv[k]];
    const std::int64_t t = tile_rows(m, rk);
    std::vector<double> bt(static_cast<std::size_t>(std::min(t, m) * rk));
    for (std::int64_t i0 = 0; i0 < m; i0 += t) {
      const std::int64_t h = std::min(t, m - i0);
      for (std::int64_t k = 0; k < rk; ++k) {
        const Coeff* src = basis.data() + k * m + i0;
        std::copy(src, src + h, bt.data() + k * h);
      }
      detail::gemm_sub(h, w, rk, bt.data(), h, x.data(), rk, panel.data() + i0, m);
      mod.reduce(panel.data() + i0, m, h, w);
    }
  }

  // B <- B - Wnew * B[newpiv, :]
  void update_basis(std::int64_t k, const std::vector<std::int64_t>& newpiv) {
    const std::int64_t rk = r();
    std::vector<double> y(static_cast<std::size_t>(k * rk));
    for (std::int64_t c = 0; c < rk; ++c)
      for (std::int64_t q = 0; q < k; ++q) y[c * k + q] = basis[static_cast<std::size_t>(c * m + newpiv[q])];
    const std::int64_t t = tile_rows(m, rk);
    std::vector<double> bt(static_cast<std::size_t>(std::min(t, m) * rk));
    for (std::int64_t i0 = 0; i0 < m; i0 += t) {
      const std::int64_t h = std::min(t, m - i0);
      for (std::int64_t c = 0; c < rk; ++c) {
        const Coeff* src = basis.data() + c * m + i0;
        std::copy(src, src + h, bt.data() + c * h);
      }
      detail::gemm_sub(h, rk, k, panel.data() + i0, m, y.data(), k, bt.data(), h);
      mod.reduce(bt.data(), h, h, rk);
      for (std::int64_t c = 0; c < rk; ++c) {
        Coeff* dst = basis.data() + c * m + i0;
        const double* src = bt.data() + c * h;
        for (std::int64_t i = 0; i < h; ++i) dst[i] = static_cast<Coeff>(src[i]);
      }
    }
  }

  // Reduced echelon form of panel columns [c0, c0+w); independent vectors are
  // compacted to c0.. and their pivot rows appended to out.
  std::int64_t gauss_jordan(std::int64_t c0, std::int64_t w, std::vector<std::int64_t>& out) {
    if (w <= kBaseWidth) return gj_base(c0, w, out);
    const std::int64_t w1 = w / 2;
    const std::int64_t c2 = c0 + w1;
    const std::int64_t w2 = w - w1;
    std::vector<std::int64_t> p1;
    const std::int64_t k1 = gauss_jordan(c0, w1, p1);
    if (k1 > 0) {
      std::vector<double> x(static_cast<std::size_t>(k1 * w2));
      for (std::int64_t q = 0; q < w2; ++q)
        for (std::int64_t k = 0; k < k1; ++k) x[q * k1 + k] = wcol(c2 + q)[p1[k]];
      detail::gemm_sub(m, w2, k1, wcol(c0), m, x.data(), k1, wcol(c2), m);
      mod.reduce(wcol(c2), m, m, w2);
    }
    std::vector<std::int64_t> p2;
    const std::int64_t k2 = gauss_jordan(c2, w2, p2);
    if (k2 > 0 && k1 > 0) {
      std::vector<double> y(static_cast<std::size_t>(k2 * k1));
      for (std::int64_t c = 0; c < k1; ++c)
        for (std::int64_t q = 0; q < k2; ++q) y[c * k2 + q] = wcol(c0 + c)[p2[q]];
      detail::gemm_sub(m, k1, k2, wcol(c2), m, y.data(), k2, wcol(c0), m);
      mod.reduce(wcol(c0), m, m, k1);
    }
    if (k2 > 0 && c2 != c0 + k1)
      for (std::int64_t q = 0; q < k2; ++q) std::copy(wcol(c2 + q), wcol(c2 + q) + m, wcol(c0 + k1 + q));
    out.insert(out.end(), p1.begin(), p1.end());
    out.insert(out.end(), p2.begin(), p2.end());
    return k1 + k2;
  }

  std::int64_t gj_base(std::int64_t c0, std::int64_t w, std::vector<std::int64_t>& out) {
    std::vector<std::int64_t> lp;
    for (std::int64_t j = 0; j < w; ++j) {
      double* x = wcol(c0 + j);
      const auto k = static_cast<std::int64_t>(lp.size());
      if (k > 0) {
        for (std::int64_t q = 0; q < k; ++q) {
          const double f = x[lp[q]];
          if (f == 0.0) continue;
          const double* v = wcol(c0 + q);
          for (std::int64_t i = 0; i < m; ++i) x[i] -= f * v[i];
        }
        for (std::int64_t i = 0; i < m; ++i) x[i] = mod.reduce(x[i]);
      }
      std::int64_t pr = 0;
      while (pr < m && x[pr] == 0.0) ++pr;
      if (pr == m) continue;
      const double s = inv[static_cast<std::size_t>(x[pr])];
      for (std::int64_t i = 0; i < m; ++i) x[i] = mod.reduce(x[i] * s);
      for (std::int64_t q = 0; q < k; ++q) {
        double* v = wcol(c0 + q);
        const double f = v[pr];
        if (f == 0.0) continue;
        for (std::int64_t i = 0; i < m; ++i) v[i] = mod.reduce(v[i] - f * x[i]);
      }
      if (j != k) std::copy(x, x + m, wcol(c0 + k));
      lp.push_back(pr);
    }
    out.insert(out.end(), lp.begin(), lp.end());
    return static_cast<std::int64_t>(lp.size());
  }
};

StreamingRank::StreamingRank(std::int64_t rows, std::uint32_t modulus, std::int64_t panel_width, int threads) {
  require(rows >= 0, ErrorCode::InvalidArgument, "negative row count");
  require(panel_width >= 1, ErrorCode::InvalidArgument, "panel width must be positive");
  require(is_prime(modulus) && modulus < kMaxPrime, ErrorCode::InvalidArgument, "modulus must be a prime below 2^15");
  impl_ = std::make_unique<Impl>(rows, modulus, panel_width, threads);
}

StreamingRank::~StreamingRank() = default;

void StreamingRank::push_column(std::span<const Coeff> column) {
  auto& s = *impl_;
  require(static_cast<std::int64_t>(column.size()) == s.m, ErrorCode::DimensionMismatch,
          "streamed column has the wrong length");
  if (s.r() == s.m) return;
  double* dst = s.wcol(s.pending);
  for (std::int64_t i = 0; i < s.m; ++i) {
    require(column[static_cast<std::size_t>(i)] < s.p, ErrorCode::InvariantViolation, "column entry not reduced");
    dst[i] = column[static_cast<std::size_t>(i)];
  }
  if (++s.pending == s.b) s.flush();
}

std::int64_t StreamingRank::finish() {
  impl_->flush();
  return impl_->r();
}

std::int64_t StreamingRank::rank() const { return impl_->r(); }

bool StreamingRank::saturated() const { return impl_->r() == impl_->m; }

std::uint64_t StreamingRank::memory_bytes(std::int64_t rows, std::int64_t cols, std::int64_t panel_width) {
  const auto m = static_cast<std::uint64_t>(rows);
  const auto r = static_cast<std::uint64_t>(std::min(rows, cols));
  const std::uint64_t basis = checked::umul(checked::umul(m, r), sizeof(Coeff));
  const std::uint64_t panel = checked::umul(checked::umul(m, static_cast<std::uint64_t>(panel_width)), sizeof(double));
  const std::uint64_t tile = static_cast<std::uint64_t>(kTileBudget) * sizeof(double);
  return checked::uadd(checked::uadd(basis, panel), tile);
}

}  // namespace chowdefect
