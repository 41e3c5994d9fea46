#pragma once

// Dense reference computations for the unit tests. Everything here is built
// from plain dense arrays so it does not share code paths with the CSR
// kernels or the block-elimination solvers it checks.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "apss/saddle.hpp"

namespace oracle {

using Dense = Eigen::MatrixXd;

inline Dense dense_of(const apss::SparseMatrix& m) {
  Dense d = Dense::Zero(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  const auto rp = m.row_ptr();
  const auto ci = m.col_idx();
  const auto v = m.values();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k)
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(ci[k])) += v[k];
  return d;
}

inline Eigen::VectorXd vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<double> stdvec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

/// Random sparse-ish matrix: each entry nonzero with probability `density`.
inline apss::SparseMatrix random_sparse(std::size_t rows, std::size_t cols, double density,
                                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), coin(0.0, 1.0);
  std::vector<apss::Triplet> t;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (coin(rng) < density) t.push_back({i, j, u(rng)});
  return apss::from_triplets(rows, cols, t);
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& e : v) e = u(rng);
  return v;
}

/// Assembled full operator [[A, B^T, 0], [-B, 0, -C^T], [0, C, 0]] from dense blocks.
inline Dense full_of(const apss::SaddleSystem& s) {
  const Dense a = dense_of(s.A()), b = dense_of(s.B()), c = dense_of(s.C());
  const auto n = a.rows(), m = b.rows(), l = c.rows();
  Dense k = Dense::Zero(n + m + l, n + m + l);
  k.block(0, 0, n, n) = a;
  k.block(0, n, n, m) = b.transpose();
  k.block(n, 0, m, n) = -b;
  k.block(n, n + m, m, l) = -c.transpose();
  k.block(n + m, n, l, m) = c;
  return k;
}

/// A1 and A2 from dense blocks.
inline std::pair<Dense, Dense> split_of(const apss::SaddleSystem& s) {
  const Dense a = dense_of(s.A()), b = dense_of(s.B()), c = dense_of(s.C());
  const auto n = a.rows(), m = b.rows(), l = c.rows();
  Dense a1 = Dense::Zero(n + m + l, n + m + l), a2 = a1;
  a1.block(0, 0, n, n) = a;
  a1.block(0, n, n, m) = b.transpose();
  a1.block(n, 0, m, n) = -b;
  a2.block(n, n + m, m, l) = -c.transpose();
  a2.block(n + m, n, l, m) = c;
  return {a1, a2};
}

/// Small random system with SPD A, full-row-rank B and rank-deficient C
/// (last row = sum of the others), built without the library generator.
inline apss::SaddleSystem small_singular_system(std::size_t n, std::size_t m, std::size_t l,
                                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Dense g(n, n);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = u(rng);
  Dense a = g.transpose() * g + Dense::Identity(n, n);
  a = (0.5 * (a + a.transpose())).eval();
  std::vector<apss::Triplet> ta, tb, tc;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ta.push_back({i, j, a(i, j)});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) tb.push_back({i, j, u(rng)});
  std::vector<double> last(m, 0.0);
  for (std::size_t i = 0; i + 1 < l; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double v = u(rng);
      tc.push_back({i, j, v});
      last[j] += v;
    }
  for (std::size_t j = 0; j < m; ++j) tc.push_back({l - 1, j, last[j]});
  return {apss::from_triplets(n, n, ta), apss::from_triplets(m, n, tb),
          apss::from_triplets(l, m, tc)};
}

}  // namespace oracle
