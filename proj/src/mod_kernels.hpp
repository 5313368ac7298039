#pragma once

// Shared helpers for the gemm-backed elimination kernels. Entries are held as
// doubles in 0..P-1; a dgemm over K terms stays below K * P^2 < 2^53 for all
// shapes used here, so every product is exact and reduction happens once per
// kernel call.

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <vector>

#include "chowdefect/gfpoly.hpp"

namespace chowdefect::detail {

struct ModP {
  double p;
  double inv_p;

  explicit ModP(std::uint32_t modulus) : p(modulus), inv_p(1.0 / modulus) {}

  double reduce(double x) const {
    double y = x - p * std::floor(x * inv_p);
    y += (y < 0.0) ? p : 0.0;
    y -= (y >= p) ? p : 0.0;
    return y;
  }

  void reduce(double* a, std::int64_t lda, std::int64_t rows, std::int64_t cols) const {
    for (std::int64_t c = 0; c < cols; ++c) {
      double* x = a + c * lda;
      for (std::int64_t i = 0; i < rows; ++i) x[i] = reduce(x[i]);
    }
  }
};

inline std::vector<double> inverse_table(std::uint32_t modulus) {
  PrimeField field(modulus);
  std::vector<double> inv(modulus, 0.0);
  for (std::uint32_t a = 1; a < modulus; ++a) inv[a] = field.inv(static_cast<Coeff>(a));
  return inv;
}

// C -= A * B, all column-major.
inline void gemm_sub(std::int64_t m, std::int64_t n, std::int64_t k, const double* a, std::int64_t lda,
                     const double* b, std::int64_t ldb, double* c, std::int64_t ldc) {
  if (m == 0 || n == 0 || k == 0) return;
  using Stride = Eigen::OuterStride<>;
  using ConstBlock = Eigen::Map<const Eigen::MatrixXd, 0, Stride>;
  Eigen::Map<Eigen::MatrixXd, 0, Stride> cm(c, m, n, Stride(ldc));
  cm.noalias() -= ConstBlock(a, m, k, Stride(lda)) * ConstBlock(b, k, n, Stride(ldb));
}

inline void set_gemm_threads(int threads) { Eigen::setNbThreads(threads < 1 ? 1 : threads); }

}  // namespace chowdefect::detail
