#pragma once

/// \file apss/dense.hpp
/// Dense matrices for the desk-scale analysis path.

#include <Eigen/Dense>

#include "apss/sparse.hpp"

namespace apss {

using DenseMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;

DenseMatrix to_dense(const SparseMatrix& m);

inline Eigen::Map<const Eigen::VectorXd> as_eigen(const Vector& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

inline Vector to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace apss
