#pragma once

/// \file apss/saddle.hpp
/// \brief Block three-by-three saddle point systems
///
///     [  A   B^T   0  ] [x]   [f]
///     [ -B    0  -C^T ] [y] = [g]
///     [  0    C    0  ] [z]   [h]
///
/// with A (n x n) symmetric, B (m x n), C (l x m). The operator is split as
/// A1 + A2 where A1 carries the (A, B) coupling and A2 the skew (C) coupling.

#include <cstddef>
#include <span>
#include <utility>

#include "apss/sparse.hpp"

namespace apss {

class SaddleSystem {
 public:
  SaddleSystem() = default;

  /// Throws Error unless B.cols = n, C.cols = m and A is numerically
  /// symmetric (max |A - A^T| <= 1e-12 ||A||_F).
  SaddleSystem(SparseMatrix a, SparseMatrix b, SparseMatrix c);

  const SparseMatrix& A() const noexcept { return a_; }
  const SparseMatrix& B() const noexcept { return b_; }
  const SparseMatrix& C() const noexcept { return c_; }

  std::size_t n() const noexcept { return a_.rows(); }
  std::size_t m() const noexcept { return b_.rows(); }
  std::size_t l() const noexcept { return c_.rows(); }
  /// Order of the assembled operator, n + m + l.
  std::size_t order() const noexcept { return n() + m() + l(); }

  /// y = full operator * x, matrix-free.
  Vector apply(std::span<const double> x) const;

 private:
  SparseMatrix a_, b_, c_;
};

/// The (x; y; z) partition of a flat vector of length n + m + l.
struct BlockVector {
  Vector x, y, z;

  static BlockVector split(const SaddleSystem& sys, std::span<const double> flat);
  Vector flatten() const;
};

/// Diagonal of D: the column 2-norms of the unscaled operator (zero columns
/// replaced by 1).
struct ScalingRecord {
  Vector d;
};

SparseMatrix assemble_full(const SaddleSystem& sys);

/// (A1, A2) with A1 + A2 = assemble_full(sys).
std::pair<SparseMatrix, SparseMatrix> assemble_split(const SaddleSystem& sys);

/// Symmetric form [[A, B^T, 0], [B, 0, C^T], [0, C, 0]]; documentation and
/// tests only.
SparseMatrix assemble_symmetric(const SaddleSystem& sys);

/// D^{-1/2} * full * D^{-1/2}, returned block-wise.
std::pair<SaddleSystem, ScalingRecord> scale_system(const SaddleSystem& sys);

/// D^{-1/2} x: maps a solution of the scaled system back to the original.
Vector unscale_solution(std::span<const double> x_scaled, const ScalingRecord& rec);

/// b = full * ones, so the exact solution is the all-ones vector.
Vector rhs_for_ones(const SaddleSystem& sys);

/// ||b - full * x|| / ||b||. Throws Error for b = 0.
double residual_norm(const SaddleSystem& sys, std::span<const double> x, std::span<const double> b);
double residual_norm(const SaddleSystem& sys, const BlockVector& x, std::span<const double> b);

}  // namespace apss
