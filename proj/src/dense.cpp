#include "apss/dense.hpp"

namespace apss {

DenseMatrix to_dense(const SparseMatrix& m) {
  DenseMatrix d = DenseMatrix::Zero(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (const auto& e : m.triplets())
    d(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  return d;
}

}  // namespace apss
