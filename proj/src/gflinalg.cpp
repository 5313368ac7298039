#include "chowdefect/gflinalg.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "chowdefect/checked.hpp"
#include "chowdefect/error.hpp"

namespace chowdefect {

DenseMatrix::DenseMatrix(std::int64_t rows, std::int64_t cols, std::uint32_t modulus)
    : rows_(rows), cols_(cols), p_(modulus) {
  require(rows >= 0 && cols >= 0, ErrorCode::InvalidArgument, "negative matrix shape");
  data_.assign(static_cast<std::size_t>(checked::mul(rows, cols)), 0);
}

void DenseMatrix::set(std::int64_t r, std::int64_t c, Coeff v) {
  require(r >= 0 && r < rows_ && c >= 0 && c < cols_, ErrorCode::IndexOutOfRange, "matrix index out of range");
  require(v < p_, ErrorCode::InvariantViolation, "matrix entry not reduced");
  data_[index(r, c)] = v;
}

std::span<const Coeff> DenseMatrix::column(std::int64_t c) const {
  require(c >= 0 && c < cols_, ErrorCode::IndexOutOfRange, "column index out of range");
  return std::span<const Coeff>(data_).subspan(index(0, c), static_cast<std::size_t>(rows_));
}

std::span<Coeff> DenseMatrix::column(std::int64_t c) {
  require(c >= 0 && c < cols_, ErrorCode::IndexOutOfRange, "column index out of range");
  return std::span<Coeff>(data_).subspan(index(0, c), static_cast<std::size_t>(rows_));
}

void DenseMatrix::dump(std::ostream& os) const {
  os << rows_ << ' ' << cols_ << ' ' << p_ << '\n';
  for (std::int64_t r = 0; r < rows_; ++r) {
    for (std::int64_t c = 0; c < cols_; ++c) {
      if (c) os << ' ';
      os << (*this)(r, c);
    }
    os << '\n';
  }
}

DenseMatrix DenseMatrix::load(std::istream& is) {
  std::int64_t rows = 0, cols = 0;
  std::uint32_t p = 0;
  if (!(is >> rows >> cols >> p)) fail(ErrorCode::ParseError, "matrix dump: bad header");
  DenseMatrix m(rows, cols, p);
  for (std::int64_t r = 0; r < rows; ++r)
    for (std::int64_t c = 0; c < cols; ++c) {
      std::uint32_t v;
      if (!(is >> v)) fail(ErrorCode::ParseError, "matrix dump: truncated at row " + std::to_string(r));
      m.set(r, c, static_cast<Coeff>(v));
    }
  return m;
}

DenseMatrix from_columns(std::span<const std::vector<Coeff>> cols, std::int64_t rows, std::uint32_t modulus) {
  if (!cols.empty()) rows = static_cast<std::int64_t>(cols.front().size());
  DenseMatrix m(rows, static_cast<std::int64_t>(cols.size()), modulus);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    require(static_cast<std::int64_t>(cols[c].size()) == rows, ErrorCode::DimensionMismatch,
            "column " + std::to_string(c) + " has a different length");
    auto dst = m.column(static_cast<std::int64_t>(c));
    for (std::size_t r = 0; r < cols[c].size(); ++r) {
      require(cols[c][r] < modulus, ErrorCode::InvariantViolation, "column entry not reduced");
      dst[r] = cols[c][r];
    }
  }
  return m;
}

DenseMatrix row_select(const DenseMatrix& m, std::span<const std::int64_t> keep) {
  for (std::size_t q = 0; q < keep.size(); ++q) {
    require(keep[q] >= 0 && keep[q] < m.rows(), ErrorCode::IndexOutOfRange, "row index out of range");
    require(q == 0 || keep[q] > keep[q - 1], ErrorCode::InvalidArgument, "row set must be strictly increasing");
  }
  DenseMatrix out(static_cast<std::int64_t>(keep.size()), m.cols(), m.modulus());
  for (std::int64_t c = 0; c < m.cols(); ++c) {
    auto src = m.column(c);
    auto dst = out.column(c);
    for (std::size_t q = 0; q < keep.size(); ++q) dst[q] = src[static_cast<std::size_t>(keep[q])];
  }
  return out;
}

std::int64_t rank_reference(const DenseMatrix& m) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  const std::uint64_t p = m.modulus();
  PrimeField field(m.modulus());
  std::vector<std::vector<std::uint32_t>> a(rows, std::vector<std::uint32_t>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(static_cast<std::int64_t>(r), static_cast<std::int64_t>(c));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = field.inv(static_cast<Coeff>(a[rank][c]));
    for (std::size_t q = c; q < cols; ++q) a[rank][q] = static_cast<std::uint32_t>(a[rank][q] * inv % p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t f = a[r][c];
      if (f == 0) continue;
      for (std::size_t q = c; q < cols; ++q)
        a[r][q] = static_cast<std::uint32_t>((a[r][q] + (p - f) * a[rank][q]) % p);
    }
    ++rank;
  }
  return static_cast<std::int64_t>(rank);
}

}  // namespace chowdefect
