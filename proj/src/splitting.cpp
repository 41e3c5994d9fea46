#include "apss/splitting.hpp"

#include <chrono>
#include <cmath>

#include "apss/dense.hpp"

namespace apss {

struct ApssOperator::DenseFactors {
  Eigen::LLT<DenseMatrix> s1;  // aI + A + B^T B / a
  Eigen::LLT<DenseMatrix> s2;  // a^2 I + C C^T
};

ApssOperator::ApssOperator(SaddleSystem sys, double alpha, InnerOptions inner)
    : sys_(std::make_shared<const SaddleSystem>(std::move(sys))), alpha_(alpha), inner_(inner) {
  if (!(alpha_ > 0.0)) throw Error("ApssOperator: alpha must be positive");
  if (!(inner_.reduction > 0.0 && inner_.reduction < 1.0))
    throw Error("ApssOperator: inner reduction must lie in (0, 1)");
  if (inner_.mode == InnerSolver::exact_dense) {
    const DenseMatrix a = to_dense(sys_->A());
    const DenseMatrix b = to_dense(sys_->B());
    const DenseMatrix c = to_dense(sys_->C());
    DenseMatrix s1 = a + b.transpose() * b / alpha_;
    s1.diagonal().array() += alpha_;
    DenseMatrix s2 = c * c.transpose();
    s2.diagonal().array() += alpha_ * alpha_;
    auto f = std::make_shared<DenseFactors>();
    f->s1.compute(s1);
    f->s2.compute(s2);
    if (f->s1.info() != Eigen::Success || f->s2.info() != Eigen::Success)
      throw Error("ApssOperator: shifted Schur matrix is not positive definite (is A SPD?)");
    factors_ = std::move(f);
  }
}

namespace {

void record(InnerStats* stats, const SolveReport& rep) {
  if (stats == nullptr) return;
  ++stats->solves;
  stats->iterations += rep.iterations;
  if (!rep.converged) ++stats->unconverged;
}

}  // namespace

BlockVector ApssOperator::solve_shift_a1(const BlockVector& r, InnerStats* stats) const {
  const auto& s = *sys_;
  const double a = alpha_;
  if (r.x.size() != s.n() || r.y.size() != s.m() || r.z.size() != s.l())
    throw Error("solve_shift_a1: block sizes do not match the system");

  Vector rhs = r.x;
  axpy(-1.0 / a, spmv_transpose(s.B(), r.y), rhs);

  BlockVector w;
  if (factors_) {
    w.x = to_vector(factors_->s1.solve(as_eigen(rhs)));
  } else {
    const LinearMap schur = [&s, a](const Vector& v) {
      Vector out = spmv(s.A(), v);
      axpy(a, v, out);
      axpy(1.0 / a, spmv_transpose(s.B(), spmv(s.B(), v)), out);
      return out;
    };
    auto [sol, rep] = cg(schur, rhs, Vector(rhs.size(), 0.0), inner_.reduction, inner_.maxit);
    record(stats, rep);
    w.x = std::move(sol);
  }

  w.y = spmv(s.B(), w.x);
  for (std::size_t i = 0; i < w.y.size(); ++i) w.y[i] = (r.y[i] + w.y[i]) / a;
  w.z = r.z;
  for (auto& e : w.z) e /= a;
  return w;
}

BlockVector ApssOperator::solve_shift_a2(const BlockVector& r, InnerStats* stats) const {
  const auto& s = *sys_;
  const double a = alpha_;
  if (r.x.size() != s.n() || r.y.size() != s.m() || r.z.size() != s.l())
    throw Error("solve_shift_a2: block sizes do not match the system");

  Vector rhs = spmv(s.C(), r.y);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = a * r.z[i] - rhs[i];

  BlockVector w;
  if (factors_) {
    w.z = to_vector(factors_->s2.solve(as_eigen(rhs)));
  } else {
    const LinearMap schur = [&s, a](const Vector& v) {
      Vector out = spmv(s.C(), spmv_transpose(s.C(), v));
      axpy(a * a, v, out);
      return out;
    };
    auto [sol, rep] = cg(schur, rhs, Vector(rhs.size(), 0.0), inner_.reduction, inner_.maxit);
    record(stats, rep);
    w.z = std::move(sol);
  }

  w.x = r.x;
  for (auto& e : w.x) e /= a;
  w.y = spmv_transpose(s.C(), w.z);
  for (std::size_t i = 0; i < w.y.size(); ++i) w.y[i] = (r.y[i] + w.y[i]) / a;
  return w;
}

Vector ApssOperator::apply_preconditioner(const Vector& r, InnerStats* stats) const {
  const BlockVector half = solve_shift_a1(BlockVector::split(*sys_, r), stats);
  return solve_shift_a2(half, stats).flatten();
}

Vector ApssOperator::apply_shift_a1(const Vector& v, double sign) const {
  const auto& s = *sys_;
  const auto blk = BlockVector::split(s, v);
  BlockVector out;
  out.x = spmv(s.A(), blk.x);
  axpy(1.0, spmv_transpose(s.B(), blk.y), out.x);
  out.y = spmv(s.B(), blk.x);
  for (auto& e : out.y) e = -e;
  out.z.assign(s.l(), 0.0);
  Vector flat = out.flatten();
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = alpha_ * v[i] + sign * flat[i];
  return flat;
}

Vector ApssOperator::apply_shift_a2(const Vector& v, double sign) const {
  const auto& s = *sys_;
  const auto blk = BlockVector::split(s, v);
  BlockVector out;
  out.x.assign(s.n(), 0.0);
  out.y = spmv_transpose(s.C(), blk.z);
  for (auto& e : out.y) e = -e;
  out.z = spmv(s.C(), blk.y);
  Vector flat = out.flatten();
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = alpha_ * v[i] + sign * flat[i];
  return flat;
}

Vector ApssOperator::apply_m(const Vector& v) const {
  return apply_shift_a1(apply_shift_a2(v, 1.0), 1.0);
}

Preconditioner ApssOperator::as_preconditioner(InnerStats* stats) const {
  // Copies share the system and factors; the callable keeps them alive.
  return [op = *this, stats](const Vector& r) { return op.apply_preconditioner(r, stats); };
}

namespace {

std::pair<double, double> split_frobenius(const SaddleSystem& sys) {
  const double fa = frobenius_norm(sys.A());
  const double fb = frobenius_norm(sys.B());
  const double fc = frobenius_norm(sys.C());
  return {std::sqrt(fa * fa + 2.0 * fb * fb), std::sqrt(2.0) * fc};
}

}  // namespace

double psi(const SaddleSystem& sys, double alpha) {
  const auto [f1, f2] = split_frobenius(sys);
  const double n = static_cast<double>(sys.order());
  return n * alpha * alpha - alpha * (f1 + f2) + f1 * f2;
}

double estimate_alpha(const SaddleSystem& sys) {
  const auto [f1, f2] = split_frobenius(sys);
  return (f1 + f2) / (2.0 * static_cast<double>(sys.order()));
}

std::pair<Vector, SolveReport> apss_iterate(const ApssOperator& op, const Vector& b,
                                            const Vector& x0, const IterateOptions& opts,
                                            InnerStats* stats) {
  if (!(opts.tol > 0.0)) throw Error("apss_iterate: tol must be positive");
  const auto& sys = op.system();
  if (b.size() != sys.order() || x0.size() != sys.order())
    throw Error("apss_iterate: vector length does not match the system order");
  const auto t0 = std::chrono::steady_clock::now();

  SolveReport rep;
  Vector x = x0;
  double res = residual_norm(sys, x, b);
  double best = res;
  rep.residual_history.push_back(res);
  rep.final_residual = res;

  while (res > opts.tol && rep.iterations < opts.maxit) {
    Vector rhs = op.apply_shift_a2(x, -1.0);
    axpy(1.0, b, rhs);
    const Vector half = op.solve_shift_a1(BlockVector::split(sys, rhs), stats).flatten();

    rhs = op.apply_shift_a1(half, -1.0);
    axpy(1.0, b, rhs);
    x = op.solve_shift_a2(BlockVector::split(sys, rhs), stats).flatten();

    ++rep.iterations;
    res = residual_norm(sys, x, b);
    rep.residual_history.push_back(res);
    best = std::min(best, res);
    if (!std::isfinite(res) || res > opts.divergence_factor * best) {
      rep.reason = StopReason::diverged;
      break;
    }
  }
  rep.final_residual = res;
  rep.converged = res <= opts.tol;
  if (rep.converged) rep.reason = StopReason::converged;
  else if (rep.reason != StopReason::diverged) rep.reason = StopReason::max_iterations;
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(x), std::move(rep)};
}

}  // namespace apss
