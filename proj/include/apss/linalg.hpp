#pragma once

/// \file apss/linalg.hpp
/// \brief Vector helpers, the matrix-free operator type, and 2-norm estimation.

#include <cstddef>
#include <functional>
#include <span>

#include "apss/sparse.hpp"

namespace apss {

/// Matrix-free linear map R^k -> R^k.
using LinearMap = std::function<Vector(const Vector&)>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

inline LinearMap as_map(const SparseMatrix& m) {
  return [&m](const Vector& x) { return spmv(m, x); };
}

struct NormEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;  ///< false: maxit hit, value is the last estimate
};

/// Power iteration on x -> adjoint(apply(x)); returns sqrt of the dominant
/// eigenvalue once its relative change drops below tol.
NormEstimate operator_two_norm(const LinearMap& apply, const LinearMap& adjoint, std::size_t dim,
                               double tol = 1e-10, std::size_t maxit = 5000);

/// Same, with no adjoint available: the operator is materialized densely by
/// applying it to each basis vector (desk-scale dims only).
NormEstimate operator_two_norm(const LinearMap& apply, std::size_t dim, double tol = 1e-10,
                               std::size_t maxit = 5000);

}  // namespace apss
