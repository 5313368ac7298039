// Right-looking blocked LU over Z_P. Column panels are factored recursively;
// trailing updates are exact dgemm calls followed by one modular reduction.
// Only the rank is extracted, so L and U of finished panels are discarded.

#include <algorithm>
#include <utility>

#include "chowdefect/checked.hpp"
#include "chowdefect/gflinalg.hpp"
#include "mod_kernels.hpp"

namespace chowdefect {

namespace {

constexpr std::int64_t kPanelWidth = 512;
constexpr std::int64_t kBaseWidth = 16;

class BlockedRank {
 public:
  BlockedRank(std::vector<double>& a, std::int64_t m, std::int64_t n, std::uint32_t p)
      : a_(a.data()), m_(m), n_(n), mod_(p), inv_(detail::inverse_table(p)) {}

  std::int64_t run(const RankProgress& progress) {
    std::int64_t r = 0;
    for (std::int64_t ps = 0; ps < n_ && r < m_; ps += kPanelWidth) {
      ps_ = ps;
      pe_ = std::min(n_, ps + kPanelWidth);
      swaps_.clear();
      const std::int64_t k = factor(ps_, pe_ - ps_, r);
      if (k > 0 && pe_ < n_) {
        const std::int64_t nt = n_ - pe_;
        for (std::int64_t c = pe_; c < n_; ++c) {
          double* x = col(c);
          for (auto [i, j] : swaps_) std::swap(x[i], x[j]);
        }
        trsm(col(ps_) + r, k, col(pe_) + r, nt);
        if (r + k < m_) {
          detail::gemm_sub(m_ - r - k, nt, k, col(ps_) + r + k, m_, col(pe_) + r, m_, col(pe_) + r + k, m_);
          mod_.reduce(col(pe_) + r + k, m_, m_ - r - k, nt);
        }
      }
      r += k;
      if (progress) progress(pe_, n_, r);
    }
    return r;
  }

 private:
  double* col(std::int64_t c) { return a_ + c * m_; }

  void swap_rows(std::int64_t i, std::int64_t j) {
    for (std::int64_t c = ps_; c < pe_; ++c) std::swap(col(c)[i], col(c)[j]);
    swaps_.emplace_back(i, j);
  }

  // B (k x nb, leading dimension m) <- L^{-1} B for the unit lower triangular
  // k x k matrix L stored below the diagonal at l (leading dimension m).
  void trsm(const double* l, std::int64_t k, double* b, std::int64_t nb) {
    if (k <= kBaseWidth) {
      for (std::int64_t q = 0; q < nb; ++q) {
        double* x = b + q * m_;
        for (std::int64_t i = 1; i < k; ++i) {
          double s = x[i];
          for (std::int64_t j = 0; j < i; ++j) s -= l[i + j * m_] * x[j];
          x[i] = mod_.reduce(s);
        }
      }
      return;
    }
    const std::int64_t k1 = k / 2;
    trsm(l, k1, b, nb);
    detail::gemm_sub(k - k1, nb, k1, l + k1, m_, b, m_, b + k1, m_);
    mod_.reduce(b + k1, m_, k - k1, nb);
    trsm(l + k1 + k1 * m_, k - k1, b + k1, nb);
  }

  // Factors columns [c0, c0+w) on rows [r, m). Pivot columns end up compacted
  // at c0.. and pivot rows at r..; returns the number of pivots.
  std::int64_t factor(std::int64_t c0, std::int64_t w, std::int64_t r) {
    if (r >= m_ || w == 0) return 0;
    if (w <= kBaseWidth) return factor_base(c0, w, r);
    const std::int64_t w1 = w / 2;
    const std::int64_t k1 = factor(c0, w1, r);
    const std::int64_t c2 = c0 + w1;
    const std::int64_t w2 = w - w1;
    if (k1 > 0) {
      trsm(col(c0) + r, k1, col(c2) + r, w2);
      if (r + k1 < m_) {
        detail::gemm_sub(m_ - r - k1, w2, k1, col(c0) + r + k1, m_, col(c2) + r, m_, col(c2) + r + k1, m_);
        mod_.reduce(col(c2) + r + k1, m_, m_ - r - k1, w2);
      }
    }
    const std::int64_t k2 = factor(c2, w2, r + k1);
    if (k2 > 0 && c2 != c0 + k1)
      for (std::int64_t q = 0; q < k2; ++q) std::copy(col(c2 + q), col(c2 + q) + m_, col(c0 + k1 + q));
    return k1 + k2;
  }

  std::int64_t factor_base(std::int64_t c0, std::int64_t w, std::int64_t r) {
    std::int64_t k = 0;
    for (std::int64_t j = 0; j < w; ++j) {
      const std::int64_t rr = r + k;
      if (rr >= m_) break;
      double* x = col(c0 + j);
      std::int64_t i = rr;
      while (i < m_ && x[i] == 0.0) ++i;
      if (i == m_) continue;
      if (i != rr) swap_rows(i, rr);
      const double inv = inv_[static_cast<std::size_t>(x[rr])];
      for (std::int64_t q = rr + 1; q < m_; ++q) x[q] = mod_.reduce(x[q] * inv);
      for (std::int64_t jj = j + 1; jj < w; ++jj) {
        double* y = col(c0 + jj);
        const double u = y[rr];
        if (u == 0.0) continue;
        for (std::int64_t q = rr + 1; q < m_; ++q) y[q] = mod_.reduce(y[q] - x[q] * u);
      }
      if (j != k) std::copy(x, x + m_, col(c0 + k));
      ++k;
    }
    return k;
  }

  double* a_;
  std::int64_t m_;
  std::int64_t n_;
  detail::ModP mod_;
  std::vector<double> inv_;
  std::int64_t ps_ = 0;
  std::int64_t pe_ = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> swaps_;
};

}  // namespace

std::uint64_t rank_workspace_bytes(std::int64_t rows, std::int64_t cols) {
  return checked::umul(checked::umul(static_cast<std::uint64_t>(rows), static_cast<std::uint64_t>(cols)),
                       sizeof(double));
}

std::int64_t rank_mod_p(const DenseMatrix& m, const RankOptions& opts) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  std::vector<double> work(m.data().begin(), m.data().end());
  detail::set_gemm_threads(opts.threads);
  BlockedRank lu(work, m.rows(), m.cols(), m.modulus());
  return lu.run(opts.progress);
}

}  // namespace chowdefect
