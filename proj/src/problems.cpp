#include "apss/problems.hpp"

#include <array>
#include <string>
#include <vector>

#include "apss/dense.hpp"

namespace apss {

SaddleSystem gen_kron_example(std::size_t p, KronOptions opts) {
  if (p < 2 || p % 2 != 0)
    throw Error("gen_kron_example: p must be even and >= 2 (got " + std::to_string(p) + ")");

  const double h = 1.0 / static_cast<double>(p + 1);
  const SparseMatrix t = tridiag(p, -1.0, 2.0, -1.0, 1.0 / (h * h));
  const SparseMatrix f = tridiag(p, 0.0, 1.0, -1.0, 1.0 / h);
  const SparseMatrix id = identity(p);

  const SparseMatrix lap = add(kron(id, t), kron(t, id));
  const std::size_t q = p * p;
  const std::array<std::size_t, 2> two_q{q, q};
  const std::array<std::size_t, 1> one_q{q};

  const std::array<const SparseMatrix*, 4> a_blocks{&lap, nullptr, nullptr, &lap};
  SparseMatrix a = block_assemble(two_q, two_q, a_blocks);

  const SparseMatrix b_left = kron(id, f);
  const SparseMatrix b_right = kron(f, id);
  const std::array<const SparseMatrix*, 2> b_blocks{&b_left, &b_right};
  SparseMatrix b = block_assemble(one_q, two_q, b_blocks);

  Vector e_diag(p);
  for (std::size_t k = 0; k < p; ++k) e_diag[k] = static_cast<double>(k * p + 1);
  const SparseMatrix c1 = kron(diagonal(e_diag), f);

  // c1 = (e; 0)^T C1 and c2 = (0; e)^T C1: column sums over each half of the rows.
  Vector first_half(q, 0.0), second_half(q, 0.0);
  for (const auto& entry : c1.triplets()) {
    auto& target = entry.row < q / 2 ? first_half : second_half;
    target[entry.col] += entry.value;
  }
  const Vector& extra_row = opts.duplicate_row ? second_half : first_half;

  std::vector<Triplet> c_entries = c1.triplets();
  for (std::size_t j = 0; j < q; ++j) {
    c_entries.push_back({q, j, extra_row[j]});
    c_entries.push_back({q + 1, j, second_half[j]});
  }
  SparseMatrix c = from_triplets(q + 2, q, c_entries);

  return {std::move(a), std::move(b), std::move(c)};
}

SaddleSystem gen_random_singular(std::size_t n, std::size_t m, std::size_t l,
                                 std::size_t deficiency, std::uint64_t seed) {
  if (n == 0 || m == 0) throw Error("gen_random_singular: n and m must be positive");
  if (deficiency < 1 || deficiency > l)
    throw Error("gen_random_singular: need 1 <= deficiency <= l");
  const std::size_t rank_c = l - deficiency;
  if (rank_c > m) throw Error("gen_random_singular: need m >= l - deficiency");
  if (m > n) throw Error("gen_random_singular: B cannot have full row rank with m > n");

  UniformStream rng(seed);
  const auto ni = static_cast<Eigen::Index>(n);
  const auto mi = static_cast<Eigen::Index>(m);

  DenseMatrix mm(ni, ni);
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index j = 0; j < ni; ++j) mm(i, j) = rng.next_signed();
  DenseMatrix a = mm.transpose() * mm + DenseMatrix::Identity(ni, ni);
  a = 0.5 * (a + a.transpose()).eval();

  DenseMatrix b(mi, ni);
  for (Eigen::Index i = 0; i < mi; ++i)
    for (Eigen::Index j = 0; j < ni; ++j) b(i, j) = rng.next_signed();
  if (Eigen::FullPivLU<DenseMatrix>(b).rank() != mi)
    throw Error("gen_random_singular: B drawn without full row rank; choose another seed");

  DenseMatrix c = DenseMatrix::Zero(static_cast<Eigen::Index>(l), mi);
  for (std::size_t i = 0; i < rank_c; ++i)
    for (Eigen::Index j = 0; j < mi; ++j) c(static_cast<Eigen::Index>(i), j) = rng.next_signed();
  for (std::size_t i = rank_c; i < l; ++i)
    for (std::size_t k = 0; k < rank_c; ++k)
      c.row(static_cast<Eigen::Index>(i)) += rng.next_signed() * c.row(static_cast<Eigen::Index>(k));

  auto to_sparse = [](const DenseMatrix& d) {
    std::vector<Triplet> t;
    for (Eigen::Index i = 0; i < d.rows(); ++i)
      for (Eigen::Index j = 0; j < d.cols(); ++j)
        t.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), d(i, j)});
    return from_triplets(static_cast<std::size_t>(d.rows()), static_cast<std::size_t>(d.cols()), t);
  };
  return {to_sparse(a), to_sparse(b), to_sparse(c)};
}

}  // namespace apss
