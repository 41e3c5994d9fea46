#pragma once

/// \file apss/sparse.hpp
/// \brief Compressed sparse row storage and the handful of kernels the
/// saddle point solvers need.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace apss {

using Vector = std::vector<double>;

/// Error raised on malformed inputs (bad dimensions, bad indices, bad files).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// CSR matrix. Immutable once built: within a row the column indices are
/// strictly increasing and no explicit zeros are stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Zero matrix of the given shape.
  SparseMatrix(std::size_t rows, std::size_t cols);

  /// Adopts raw CSR arrays. Throws Error if they violate the CSR invariants.
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
               std::vector<std::size_t> col_idx, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Entry lookup by binary search in the row; 0 for structural zeros.
  double at(std::size_t i, std::size_t j) const;

  /// All stored entries in row-major order.
  std::vector<Triplet> triplets() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// Builds a CSR matrix; duplicates are summed and exact zeros dropped.
SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::span<const Triplet> entries);

inline SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                  std::initializer_list<Triplet> entries) {
  return from_triplets(rows, cols, std::span<const Triplet>(entries.begin(), entries.size()));
}

SparseMatrix identity(std::size_t n);
SparseMatrix diagonal(std::span<const double> d);

/// p x p tridiagonal matrix with (lo, di, up) on the three diagonals, all
/// entries multiplied by scale.
SparseMatrix tridiag(std::size_t p, double lo, double di, double up, double scale = 1.0);

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix transpose(const SparseMatrix& m);

/// alpha * a + beta * b.
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha = 1.0,
                 double beta = 1.0);
SparseMatrix scaled(const SparseMatrix& m, double factor);

/// diag(row_scale) * m * diag(col_scale).
SparseMatrix scale_rows_cols(const SparseMatrix& m, std::span<const double> row_scale,
                             std::span<const double> col_scale);

/// Stacks blocks into one matrix. `blocks` is row-major over a grid of
/// block_rows x block_cols; null entries are zero blocks whose size is
/// inferred from the row/column dimensions given.
SparseMatrix block_assemble(std::span<const std::size_t> row_dims,
                            std::span<const std::size_t> col_dims,
                            std::span<const SparseMatrix* const> blocks);

Vector spmv(const SparseMatrix& m, std::span<const double> x);
void spmv(const SparseMatrix& m, std::span<const double> x, std::span<double> y);

/// y = m^T x without forming the transpose.
Vector spmv_transpose(const SparseMatrix& m, std::span<const double> x);
void spmv_transpose(const SparseMatrix& m, std::span<const double> x, std::span<double> y);

double frobenius_norm(const SparseMatrix& m);
Vector column_two_norms(const SparseMatrix& m);

/// Largest |m - m^T| entry.
double max_asymmetry(const SparseMatrix& m);

}  // namespace apss
