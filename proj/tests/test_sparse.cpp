#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "apss/linalg.hpp"
#include "apss/sparse.hpp"
#include "oracles.hpp"

using namespace apss;
using doctest::Approx;

TEST_CASE("from_triplets builds canonical CSR") {
  SUBCASE("identity") {
    const auto m = from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}});
    CHECK(m == identity(2));
    CHECK(m.nnz() == 2);
  }
  SUBCASE("duplicates are summed") {
    const auto m = from_triplets(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}});
    CHECK(m.nnz() == 1);
    CHECK(m.at(0, 0) == 3.0);
  }
  SUBCASE("explicit zeros and cancelling duplicates are dropped") {
    const auto m = from_triplets(2, 2, {{0, 1, 0.0}, {1, 0, 2.0}, {1, 0, -2.0}, {1, 1, 5.0}});
    CHECK(m.nnz() == 1);
    CHECK(m.at(1, 1) == 5.0);
  }
  SUBCASE("tridiag(-1,2,-1) row sums") {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < 3; ++i) {
      if (i > 0) t.push_back({i, i - 1, -1.0});
      t.push_back({i, i, 2.0});
      if (i < 2) t.push_back({i, i + 1, -1.0});
    }
    const auto m = from_triplets(3, 3, t);
    const Eigen::VectorXd sums = oracle::dense_of(m).rowwise().sum();
    CHECK(sums[0] == 1.0);
    CHECK(sums[1] == 0.0);
    CHECK(sums[2] == 1.0);
  }
  SUBCASE("out of bounds") {
    CHECK_THROWS_AS(from_triplets(2, 2, {{2, 0, 1.0}}), Error);
    CHECK_THROWS_AS(from_triplets(2, 2, {{0, 5, 1.0}}), Error);
  }
}

TEST_CASE("raw CSR constructor validates invariants") {
  CHECK_NOTHROW(SparseMatrix(2, 2, {0, 1, 2}, {0, 1}, {1.0, 1.0}));
  CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 2, 1}, {0, 1}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(SparseMatrix(1, 2, {0, 2}, {1, 0}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(SparseMatrix(1, 2, {0, 2}, {1, 1}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(SparseMatrix(1, 2, {0, 1}, {2}, {1.0}), Error);
}

TEST_CASE("spmv") {
  const Vector x{3.0, -1.0, 2.0};
  CHECK(spmv(identity(3), x) == x);
  CHECK(spmv(SparseMatrix(3, 3), x) == Vector(3, 0.0));
  const auto t = tridiag(3, -1.0, 2.0, -1.0);
  CHECK(spmv(t, Vector{1.0, 1.0, 1.0}) == Vector{1.0, 0.0, 1.0});
  CHECK_THROWS_AS(spmv(t, Vector{1.0, 1.0}), Error);
}

TEST_CASE("spmv_transpose") {
  const auto t = tridiag(4, -1.0, 2.0, -1.0);
  const Vector x{0.5, -2.0, 1.0, 3.0};
  CHECK(spmv_transpose(t, x) == spmv(t, x));
  CHECK(spmv_transpose(identity(4), x) == x);
  const auto f = tridiag(3, 0.0, 1.0, -1.0, 1.0);
  CHECK(spmv_transpose(f, Vector{1.0, 0.0, 0.0}) == Vector{1.0, -1.0, 0.0});
  CHECK_THROWS_AS(spmv_transpose(f, Vector{1.0}), Error);
}

TEST_CASE("spmv agrees with dense products on random matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + rng() % 50, c = 1 + rng() % 50;
    const auto m = oracle::random_sparse(r, c, 0.3, rng);
    const auto d = oracle::dense_of(m);
    const auto x = oracle::random_vector(c, rng);
    const auto xt = oracle::random_vector(r, rng);
    const Eigen::VectorXd ref = d * oracle::vec(x);
    const Eigen::VectorXd ref_t = d.transpose() * oracle::vec(xt);
    const Eigen::VectorXd got = oracle::vec(spmv(m, x));
    const Eigen::VectorXd got_t = oracle::vec(spmv_transpose(m, xt));
    CHECK((got - ref).norm() <= 1e-13 * std::max(1.0, ref.norm()));
    CHECK((got_t - ref_t).norm() <= 1e-13 * std::max(1.0, ref_t.norm()));
  }
}

TEST_CASE("triplet round trip reproduces the CSR arrays") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = oracle::random_sparse(1 + rng() % 30, 1 + rng() % 30, 0.2, rng);
    const auto t = m.triplets();
    CHECK(from_triplets(m.rows(), m.cols(), t) == m);
  }
}

TEST_CASE("kron") {
  const auto m = from_triplets(2, 2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 3.0}});
  SUBCASE("I2 (x) M is block diagonal") {
    const auto d = oracle::dense_of(kron(identity(2), m));
    oracle::Dense ref = oracle::Dense::Zero(4, 4);
    ref.block(0, 0, 2, 2) = oracle::dense_of(m);
    ref.block(2, 2, 2, 2) = oracle::dense_of(m);
    CHECK(d == ref);
  }
  SUBCASE("diag(1,2) (x) I2") {
    const Vector d12{1.0, 2.0}, expect{1.0, 1.0, 2.0, 2.0};
    CHECK(kron(diagonal(d12), identity(2)) == diagonal(expect));
  }
  SUBCASE("2D Laplacian from two Kronecker terms") {
    const auto t = tridiag(2, -1.0, 2.0, -1.0);
    const auto lap = oracle::dense_of(add(kron(identity(2), t), kron(t, identity(2))));
    // Reference: explicit Kronecker product over dense entries.
    const oracle::Dense td = oracle::dense_of(t), id = oracle::Dense::Identity(2, 2);
    oracle::Dense ref = oracle::Dense::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s) ref(2 * i + r, 2 * j + s) = id(i, j) * td(r, s) + td(i, j) * id(r, s);
    CHECK(lap == ref);
    CHECK(lap(0, 0) == 4.0);
    CHECK(lap(0, 3) == 0.0);
  }
  SUBCASE("shapes and identities") {
    std::mt19937_64 rng(11);
    const auto a = oracle::random_sparse(3, 4, 0.5, rng);
    const auto b = oracle::random_sparse(2, 5, 0.5, rng);
    const auto k = kron(a, b);
    CHECK(k.rows() == 6);
    CHECK(k.cols() == 20);
    CHECK(kron(identity(3), identity(4)) == identity(12));
  }
}

TEST_CASE("tridiag") {
  const auto one = tridiag(1, -1.0, 2.0, -1.0, 1.0);
  CHECK(one.rows() == 1);
  CHECK(one.at(0, 0) == 2.0);

  const double h = 1.0 / 9.0;
  const auto t = tridiag(8, -1.0, 2.0, -1.0, 1.0 / (h * h));
  for (std::size_t i = 0; i < 8; ++i) CHECK(t.at(i, i) == Approx(162.0).epsilon(1e-14));

  const auto f = tridiag(8, 0.0, 1.0, -1.0, 1.0 / h);
  CHECK(f.at(0, 0) == Approx(9.0).epsilon(1e-14));
  CHECK(f.at(0, 1) == Approx(-9.0).epsilon(1e-14));
  CHECK(f.at(0, 2) == 0.0);
  CHECK(f.at(1, 0) == 0.0);  // zero sub-diagonal is not stored
  CHECK(f.nnz() == 15);

  CHECK_THROWS_AS(tridiag(0, -1.0, 2.0, -1.0), Error);
}

TEST_CASE("frobenius and column norms") {
  CHECK(frobenius_norm(identity(7)) == Approx(std::sqrt(7.0)));
  const Vector d34{3.0, 4.0};
  CHECK(frobenius_norm(diagonal(d34)) == Approx(5.0));
  CHECK(column_two_norms(identity(4)) == Vector(4, 1.0));

  const auto with_zero_col = from_triplets(2, 3, {{0, 0, 3.0}, {1, 0, 4.0}, {1, 2, 1.0}});
  const auto cn = column_two_norms(with_zero_col);
  CHECK(cn[0] == Approx(5.0));
  CHECK(cn[1] == 0.0);
  CHECK(cn[2] == Approx(1.0));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = oracle::random_sparse(4, 4, 0.7, rng);
    const auto d = oracle::dense_of(m);
    const auto got = column_two_norms(m);
    for (int j = 0; j < 4; ++j) CHECK(got[static_cast<std::size_t>(j)] == Approx(d.col(j).norm()).epsilon(1e-14));
    CHECK(frobenius_norm(m) == Approx(d.norm()).epsilon(1e-14));
    // ||M||_F^2 = sum of squared column norms
    const double sq = std::inner_product(got.begin(), got.end(), got.begin(), 0.0);
    CHECK(sq == Approx(std::pow(frobenius_norm(m), 2)).epsilon(1e-13));
  }
}

TEST_CASE("transpose, add, scaling") {
  std::mt19937_64 rng(5);
  const auto a = oracle::random_sparse(5, 3, 0.6, rng);
  const auto b = oracle::random_sparse(5, 3, 0.6, rng);
  CHECK(oracle::dense_of(transpose(a)) == oracle::dense_of(a).transpose());
  CHECK((oracle::dense_of(add(a, b, 2.0, -1.0)) - (2.0 * oracle::dense_of(a) - oracle::dense_of(b))).norm() <= 1e-15);
  CHECK_THROWS_AS(add(a, transpose(b)), Error);
  const Vector rs{1, 2, 3, 4, 5}, cs{-1, 0.5, 2};
  const auto s = oracle::dense_of(scale_rows_cols(a, rs, cs));
  const oracle::Dense ref = oracle::vec(rs).asDiagonal() * oracle::dense_of(a) * oracle::vec(cs).asDiagonal();
  CHECK((s - ref).norm() <= 1e-15);
}

TEST_CASE("operator_two_norm") {
  const LinearMap id = [](const Vector& x) { return x; };
  CHECK(operator_two_norm(id, id, 5).value == Approx(1.0).epsilon(1e-12));

  const LinearMap half = [](const Vector& x) {
    Vector y = x;
    for (auto& e : y) e *= 0.5;
    return y;
  };
  CHECK(operator_two_norm(half, half, 4).value == Approx(0.5).epsilon(1e-12));

  // (I + A)^{-1} (I - A) for A = diag(1, 2): singular values |1 - a| / (1 + a) = {0, 1/3}.
  const LinearMap cayley = [](const Vector& x) {
    return Vector{x[0] * 0.0 / 2.0, x[1] * (1.0 - 2.0) / (1.0 + 2.0)};
  };
  const auto est = operator_two_norm(cayley, cayley, 2);
  CHECK(est.converged);
  CHECK(est.value == Approx(1.0 / 3.0).epsilon(1e-10));

  // Materializing path, nonsymmetric operator vs. dense SVD.
  std::mt19937_64 rng(17);
  const auto m = oracle::random_sparse(6, 6, 0.8, rng);
  const double ref = Eigen::JacobiSVD<oracle::Dense>(oracle::dense_of(m)).singularValues()[0];
  CHECK(operator_two_norm(as_map(m), 6).value == Approx(ref).epsilon(1e-8));

  const LinearMap zero = [](const Vector& x) { return Vector(x.size(), 0.0); };
  CHECK(operator_two_norm(zero, zero, 3).value == 0.0);
}
