#include "apss/saddle.hpp"

#include <array>
#include <cmath>

#include "apss/linalg.hpp"

namespace apss {

SaddleSystem::SaddleSystem(SparseMatrix a, SparseMatrix b, SparseMatrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_.rows() != a_.cols()) throw Error("SaddleSystem: A must be square");
  if (b_.cols() != a_.rows())
    throw Error("SaddleSystem: B has " + std::to_string(b_.cols()) + " columns, expected n = " +
                std::to_string(a_.rows()));
  if (c_.cols() != b_.rows())
    throw Error("SaddleSystem: C has " + std::to_string(c_.cols()) + " columns, expected m = " +
                std::to_string(b_.rows()));
  if (max_asymmetry(a_) > 1e-12 * frobenius_norm(a_)) throw Error("SaddleSystem: A is not symmetric");
}

Vector SaddleSystem::apply(std::span<const double> v) const {
  if (v.size() != order()) throw Error("SaddleSystem::apply: vector length mismatch");
  const std::size_t n_ = n(), m_ = m(), l_ = l();
  const auto x = v.subspan(0, n_);
  const auto y = v.subspan(n_, m_);
  const auto z = v.subspan(n_ + m_, l_);

  Vector out(order());
  std::span<double> ox(out.data(), n_), oy(out.data() + n_, m_), oz(out.data() + n_ + m_, l_);
  spmv(a_, x, ox);
  const Vector bty = spmv_transpose(b_, y);
  axpy(1.0, bty, ox);
  spmv(b_, x, oy);
  const Vector ctz = spmv_transpose(c_, z);
  for (std::size_t i = 0; i < m_; ++i) oy[i] = -oy[i] - ctz[i];
  spmv(c_, y, oz);
  return out;
}

BlockVector BlockVector::split(const SaddleSystem& sys, std::span<const double> flat) {
  if (flat.size() != sys.order()) throw Error("BlockVector::split: length mismatch");
  const auto n = static_cast<std::ptrdiff_t>(sys.n());
  const auto m = static_cast<std::ptrdiff_t>(sys.m());
  return {Vector(flat.begin(), flat.begin() + n), Vector(flat.begin() + n, flat.begin() + n + m),
          Vector(flat.begin() + n + m, flat.end())};
}

Vector BlockVector::flatten() const {
  Vector out;
  out.reserve(x.size() + y.size() + z.size());
  out.insert(out.end(), x.begin(), x.end());
  out.insert(out.end(), y.begin(), y.end());
  out.insert(out.end(), z.begin(), z.end());
  return out;
}

namespace {

SparseMatrix assemble3(const SaddleSystem& sys, std::array<const SparseMatrix*, 9> blocks) {
  const std::array<std::size_t, 3> dims{sys.n(), sys.m(), sys.l()};
  return block_assemble(dims, dims, blocks);
}

}  // namespace

SparseMatrix assemble_full(const SaddleSystem& sys) {
  const SparseMatrix bt = transpose(sys.B());
  const SparseMatrix neg_b = scaled(sys.B(), -1.0);
  const SparseMatrix neg_ct = scaled(transpose(sys.C()), -1.0);
  return assemble3(sys, {&sys.A(), &bt, nullptr,  //
                         &neg_b, nullptr, &neg_ct,  //
                         nullptr, &sys.C(), nullptr});
}

std::pair<SparseMatrix, SparseMatrix> assemble_split(const SaddleSystem& sys) {
  const SparseMatrix bt = transpose(sys.B());
  const SparseMatrix neg_b = scaled(sys.B(), -1.0);
  const SparseMatrix neg_ct = scaled(transpose(sys.C()), -1.0);
  SparseMatrix a1 = assemble3(sys, {&sys.A(), &bt, nullptr,  //
                                    &neg_b, nullptr, nullptr,  //
                                    nullptr, nullptr, nullptr});
  SparseMatrix a2 = assemble3(sys, {nullptr, nullptr, nullptr,  //
                                    nullptr, nullptr, &neg_ct,  //
                                    nullptr, &sys.C(), nullptr});
  return {std::move(a1), std::move(a2)};
}

SparseMatrix assemble_symmetric(const SaddleSystem& sys) {
  const SparseMatrix bt = transpose(sys.B());
  const SparseMatrix ct = transpose(sys.C());
  return assemble3(sys, {&sys.A(), &bt, nullptr,  //
                         &sys.B(), nullptr, &ct,  //
                         nullptr, &sys.C(), nullptr});
}

std::pair<SaddleSystem, ScalingRecord> scale_system(const SaddleSystem& sys) {
  ScalingRecord rec{column_two_norms(assemble_full(sys))};
  for (auto& d : rec.d)
    if (d == 0.0) d = 1.0;

  Vector w(rec.d.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / std::sqrt(rec.d[i]);
  const std::span<const double> all(w);
  const auto wx = all.subspan(0, sys.n());
  const auto wy = all.subspan(sys.n(), sys.m());
  const auto wz = all.subspan(sys.n() + sys.m(), sys.l());

  SaddleSystem out(scale_rows_cols(sys.A(), wx, wx), scale_rows_cols(sys.B(), wy, wx),
                   scale_rows_cols(sys.C(), wz, wy));
  return {std::move(out), std::move(rec)};
}

Vector unscale_solution(std::span<const double> x_scaled, const ScalingRecord& rec) {
  if (x_scaled.size() != rec.d.size()) throw Error("unscale_solution: length mismatch");
  Vector x(x_scaled.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = x_scaled[i] / std::sqrt(rec.d[i]);
  return x;
}

Vector rhs_for_ones(const SaddleSystem& sys) {
  const Vector ones(sys.order(), 1.0);
  return sys.apply(ones);
}

double residual_norm(const SaddleSystem& sys, std::span<const double> x, std::span<const double> b) {
  if (b.size() != sys.order()) throw Error("residual_norm: right-hand side length mismatch");
  const double nb = norm2(b);
  if (nb == 0.0) throw Error("residual_norm: zero right-hand side");
  Vector r = sys.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return norm2(r) / nb;
}

double residual_norm(const SaddleSystem& sys, const BlockVector& x, std::span<const double> b) {
  const Vector flat = x.flatten();
  return residual_norm(sys, flat, b);
}

}  // namespace apss
