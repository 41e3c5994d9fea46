#include "apss/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace apss {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                           std::vector<std::size_t> col_idx, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != rows_ + 1 || row_ptr_.front() != 0 || row_ptr_.back() != values_.size() ||
      col_idx_.size() != values_.size())
    throw Error("SparseMatrix: inconsistent CSR array lengths");
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) throw Error("SparseMatrix: row_ptr must be non-decreasing");
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= cols_) throw Error("SparseMatrix: column index out of range");
      if (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1])
        throw Error("SparseMatrix: column indices must be strictly increasing within a row");
    }
  }
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw Error("SparseMatrix::at: index out of range");
  auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      out.push_back({i, col_idx_[k], values_[k]});
  return out;
}

SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::span<const Triplet> entries) {
  std::vector<Triplet> sorted(entries.begin(), entries.end());
  for (const auto& t : sorted)
    if (t.row >= rows || t.col >= cols)
      throw Error("from_triplets: entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                  ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
  std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  std::vector<std::size_t> row_ptr(rows + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  col_idx.reserve(sorted.size());
  values.reserve(sorted.size());
  for (std::size_t k = 0; k < sorted.size();) {
    const auto r = sorted[k].row;
    const auto c = sorted[k].col;
    double sum = 0.0;
    for (; k < sorted.size() && sorted[k].row == r && sorted[k].col == c; ++k) sum += sorted[k].value;
    if (sum == 0.0) continue;
    col_idx.push_back(c);
    values.push_back(sum);
    ++row_ptr[r + 1];
  }
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
  return {rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values)};
}

SparseMatrix identity(std::size_t n) {
  Vector ones(n, 1.0);
  return diagonal(ones);
}

SparseMatrix diagonal(std::span<const double> d) {
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return from_triplets(d.size(), d.size(), t);
}

SparseMatrix tridiag(std::size_t p, double lo, double di, double up, double scale) {
  if (p == 0) throw Error("tridiag: order must be at least 1");
  std::vector<Triplet> t;
  t.reserve(3 * p);
  for (std::size_t i = 0; i < p; ++i) {
    if (i > 0) t.push_back({i, i - 1, lo * scale});
    t.push_back({i, i, di * scale});
    if (i + 1 < p) t.push_back({i, i + 1, up * scale});
  }
  return from_triplets(p, p, t);
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  const std::size_t p = b.rows(), q = b.cols();
  std::vector<Triplet> t;
  t.reserve(a.nnz() * b.nnz());
  for (const auto& ea : a.triplets())
    for (const auto& eb : b.triplets())
      t.push_back({p * ea.row + eb.row, q * ea.col + eb.col, ea.value * eb.value});
  return from_triplets(a.rows() * p, a.cols() * q, t);
}

SparseMatrix transpose(const SparseMatrix& m) {
  auto t = m.triplets();
  for (auto& e : t) std::swap(e.row, e.col);
  return from_triplets(m.cols(), m.rows(), t);
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha, double beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("add: shape mismatch");
  auto t = a.triplets();
  for (auto& e : t) e.value *= alpha;
  for (auto e : b.triplets()) {
    e.value *= beta;
    t.push_back(e);
  }
  return from_triplets(a.rows(), a.cols(), t);
}

SparseMatrix scaled(const SparseMatrix& m, double factor) {
  auto t = m.triplets();
  for (auto& e : t) e.value *= factor;
  return from_triplets(m.rows(), m.cols(), t);
}

SparseMatrix scale_rows_cols(const SparseMatrix& m, std::span<const double> row_scale,
                             std::span<const double> col_scale) {
  if (row_scale.size() != m.rows() || col_scale.size() != m.cols())
    throw Error("scale_rows_cols: scaling vector length mismatch");
  auto t = m.triplets();
  for (auto& e : t) e.value *= row_scale[e.row] * col_scale[e.col];
  return from_triplets(m.rows(), m.cols(), t);
}

SparseMatrix block_assemble(std::span<const std::size_t> row_dims,
                            std::span<const std::size_t> col_dims,
                            std::span<const SparseMatrix* const> blocks) {
  if (blocks.size() != row_dims.size() * col_dims.size())
    throw Error("block_assemble: block grid size mismatch");
  std::vector<std::size_t> row_off(row_dims.size() + 1, 0), col_off(col_dims.size() + 1, 0);
  std::partial_sum(row_dims.begin(), row_dims.end(), row_off.begin() + 1);
  std::partial_sum(col_dims.begin(), col_dims.end(), col_off.begin() + 1);

  std::vector<Triplet> t;
  for (std::size_t bi = 0; bi < row_dims.size(); ++bi) {
    for (std::size_t bj = 0; bj < col_dims.size(); ++bj) {
      const SparseMatrix* blk = blocks[bi * col_dims.size() + bj];
      if (blk == nullptr) continue;
      if (blk->rows() != row_dims[bi] || blk->cols() != col_dims[bj])
        throw Error("block_assemble: block (" + std::to_string(bi) + ", " + std::to_string(bj) +
                    ") has the wrong shape");
      for (auto e : blk->triplets()) t.push_back({e.row + row_off[bi], e.col + col_off[bj], e.value});
    }
  }
  return from_triplets(row_off.back(), col_off.back(), t);
}

void spmv(const SparseMatrix& m, std::span<const double> x, std::span<double> y) {
  if (x.size() != m.cols() || y.size() != m.rows())
    throw Error("spmv: expected x of length " + std::to_string(m.cols()) + ", got " +
                std::to_string(x.size()));
  const auto rp = m.row_ptr();
  const auto ci = m.col_idx();
  const auto v = m.values();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) s += v[k] * x[ci[k]];
    y[i] = s;
  }
}

Vector spmv(const SparseMatrix& m, std::span<const double> x) {
  Vector y(m.rows());
  spmv(m, x, y);
  return y;
}

void spmv_transpose(const SparseMatrix& m, std::span<const double> x, std::span<double> y) {
  if (x.size() != m.rows() || y.size() != m.cols())
    throw Error("spmv_transpose: expected x of length " + std::to_string(m.rows()) + ", got " +
                std::to_string(x.size()));
  std::fill(y.begin(), y.end(), 0.0);
  const auto rp = m.row_ptr();
  const auto ci = m.col_idx();
  const auto v = m.values();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) y[ci[k]] += v[k] * x[i];
}

Vector spmv_transpose(const SparseMatrix& m, std::span<const double> x) {
  Vector y(m.cols());
  spmv_transpose(m, x, y);
  return y;
}

double frobenius_norm(const SparseMatrix& m) {
  double s = 0.0;
  for (double v : m.values()) s += v * v;
  return std::sqrt(s);
}

Vector column_two_norms(const SparseMatrix& m) {
  Vector sq(m.cols(), 0.0);
  const auto ci = m.col_idx();
  const auto v = m.values();
  for (std::size_t k = 0; k < m.nnz(); ++k) sq[ci[k]] += v[k] * v[k];
  for (auto& s : sq) s = std::sqrt(s);
  return sq;
}

double max_asymmetry(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw Error("max_asymmetry: matrix is not square");
  double worst = 0.0;
  for (const auto& e : m.triplets()) worst = std::max(worst, std::abs(e.value - m.at(e.col, e.row)));
  return worst;
}

}  // namespace apss
