#pragma once

// Dense matrices over Z_P and their rank.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "chowdefect/gfpoly.hpp"

namespace chowdefect {

/// Column-major matrix with 16-bit entries in 0..P-1.
class DenseMatrix {
 public:
  DenseMatrix(std::int64_t rows, std::int64_t cols, std::uint32_t modulus);

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }

  Coeff operator()(std::int64_t r, std::int64_t c) const { return data_[index(r, c)]; }
  void set(std::int64_t r, std::int64_t c, Coeff v);

  std::span<const Coeff> column(std::int64_t c) const;
  std::span<Coeff> column(std::int64_t c);
  std::span<const Coeff> data() const { return data_; }
  std::span<Coeff> data() { return data_; }

  /// Debug dump: "rows cols modulus", then one row per line.
  void dump(std::ostream& os) const;
  static DenseMatrix load(std::istream& is);

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t index(std::int64_t r, std::int64_t c) const {
    return static_cast<std::size_t>(c) * static_cast<std::size_t>(rows_) + static_cast<std::size_t>(r);
  }

  std::int64_t rows_;
  std::int64_t cols_;
  std::uint32_t p_;
  std::vector<Coeff> data_;
};

/// Matrix whose j-th column is cols[j]; `rows` is the declared height used
/// when the list is empty.
DenseMatrix from_columns(std::span<const std::vector<Coeff>> cols, std::int64_t rows, std::uint32_t modulus);

/// Submatrix on the given rows (0-based, strictly increasing), columns kept.
DenseMatrix row_select(const DenseMatrix& m, std::span<const std::int64_t> keep);

/// Called with (columns eliminated, total columns, rank so far).
using RankProgress = std::function<void(std::int64_t, std::int64_t, std::int64_t)>;

struct RankOptions {
  int threads = 1;
  RankProgress progress;
};

/// Rank over Z_P by blocked elimination with exact gemm kernels. The result
/// is independent of thread count and blocking.
std::int64_t rank_mod_p(const DenseMatrix& m, const RankOptions& opts = {});

/// Plain row-by-row Gaussian elimination; slow, kept as an independent check.
std::int64_t rank_reference(const DenseMatrix& m);

/// Bytes of working memory rank_mod_p needs beyond the input matrix.
std::uint64_t rank_workspace_bytes(std::int64_t rows, std::int64_t cols);

/// Rank of a matrix whose columns arrive in blocks and are never stored.
/// Keeps a fully reduced echelon basis of the span seen so far in 16-bit
/// storage, so memory is rows * rank * 2 bytes plus one panel.
class StreamingRank {
 public:
  StreamingRank(std::int64_t rows, std::uint32_t modulus, std::int64_t panel_width = 256, int threads = 1);
  ~StreamingRank();
  StreamingRank(const StreamingRank&) = delete;
  StreamingRank& operator=(const StreamingRank&) = delete;

  void push_column(std::span<const Coeff> column);
  /// Drains the pending panel and returns the rank of everything pushed.
  std::int64_t finish();
  std::int64_t rank() const;
  bool saturated() const;

  static std::uint64_t memory_bytes(std::int64_t rows, std::int64_t cols, std::int64_t panel_width = 256);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace chowdefect
