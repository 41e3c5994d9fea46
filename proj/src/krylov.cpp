#include "apss/krylov.hpp"

#include <chrono>
#include <cmath>

namespace apss {

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::converged: return "converged";
    case StopReason::max_iterations: return "max_iterations";
    case StopReason::breakdown: return "breakdown";
    case StopReason::diverged: return "diverged";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vector residual(const LinearMap& apply, const Vector& b, const Vector& x) {
  Vector r = apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

}  // namespace

std::pair<Vector, SolveReport> cg(const LinearMap& apply, const Vector& b, const Vector& x0,
                                  double reduction, std::size_t maxit) {
  if (!(reduction > 0.0 && reduction < 1.0)) throw Error("cg: reduction must lie in (0, 1)");
  if (x0.size() != b.size()) throw Error("cg: x0 and b differ in length");
  const auto t0 = Clock::now();

  SolveReport rep;
  Vector x = x0;
  Vector r = residual(apply, b, x);
  double rr = dot(r, r);
  const double r0 = std::sqrt(rr);
  rep.residual_history.push_back(1.0);
  if (r0 == 0.0) {
    rep.converged = true;
    rep.reason = StopReason::converged;
    rep.wall_seconds = seconds_since(t0);
    return {std::move(x), std::move(rep)};
  }

  Vector p = r;
  Vector best = x;
  double best_res = r0;
  for (std::size_t k = 0; k < maxit; ++k) {
    const Vector ap = apply(p);
    const double pap = dot(p, ap);
    if (!(pap > 0.0))
      throw CgBreakdown("cg: p^T A p = " + std::to_string(pap) + " <= 0; operator is not SPD", x);
    const double step = rr / pap;
    axpy(step, p, x);
    axpy(-step, ap, r);
    const double rr_new = dot(r, r);
    const double rel = std::sqrt(rr_new) / r0;
    rep.iterations = k + 1;
    rep.residual_history.push_back(rel);
    if (rel < best_res / r0) {
      best_res = rel * r0;
      best = x;
    }
    if (rel <= reduction) {
      rep.converged = true;
      rep.reason = StopReason::converged;
      break;
    }
    const double beta = rr_new / rr;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
    rr = rr_new;
  }
  if (!rep.converged) x = std::move(best);
  rep.final_residual = rep.converged ? rep.residual_history.back() : best_res / r0;
  rep.wall_seconds = seconds_since(t0);
  return {std::move(x), std::move(rep)};
}

std::pair<Vector, SolveReport> fgmres(const LinearMap& apply, const Preconditioner& precond,
                                      const Vector& b, const Vector& x0, const FgmresOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error("fgmres: tol must be positive");
  if (opts.maxit == 0) throw Error("fgmres: maxit must be at least 1");
  if (x0.size() != b.size()) throw Error("fgmres: x0 and b differ in length");
  const double nb = norm2(b);
  if (nb == 0.0) throw Error("fgmres: zero right-hand side");
  const auto t0 = Clock::now();
  const std::size_t dim = b.size();

  SolveReport rep;
  Vector x = x0;
  Vector r = residual(apply, b, x);
  double beta = norm2(r);
  rep.residual_history.push_back(beta / nb);
  rep.final_residual = beta / nb;
  if (beta / nb <= opts.tol) {
    rep.converged = true;
    rep.reason = StopReason::converged;
    rep.wall_seconds = seconds_since(t0);
    return {std::move(x), std::move(rep)};
  }

  const std::size_t cycle_cap = opts.restart > 0 ? opts.restart : opts.maxit;
  std::vector<Vector> v, z;
  // Column-packed upper Hessenberg: h[j] holds rows 0..j+1 of column j.
  std::vector<Vector> h;
  Vector cs, sn, g;

  // x + Z y, with y from the (already rotated) triangular system of size k.
  auto correction = [&](std::size_t k) {
    Vector y(k, 0.0);
    for (std::size_t i = k; i-- > 0;) {
      double s = g[i];
      for (std::size_t j = i + 1; j < k; ++j) s -= h[j][i] * y[j];
      y[i] = s / h[i][i];
    }
    Vector out = x;
    for (std::size_t j = 0; j < k; ++j) axpy(y[j], z[j], out);
    return out;
  };

  while (true) {
    v.assign(1, r);
    for (auto& e : v[0]) e /= beta;
    z.clear();
    h.clear();
    cs.clear();
    sn.clear();
    g.assign(1, beta);

    std::size_t j = 0;
    bool stop = false;
    for (; j < cycle_cap && rep.iterations < opts.maxit; ++j) {
      z.push_back(precond ? precond(v[j]) : v[j]);
      Vector w = apply(z[j]);
      if (w.size() != dim) throw Error("fgmres: operator changed the dimension");

      Vector col(j + 2, 0.0);
      const double before = norm2(w);
      for (std::size_t i = 0; i <= j; ++i) {
        const double hij = dot(w, v[i]);
        col[i] += hij;
        axpy(-hij, v[i], w);
      }
      double after = norm2(w);
      if (after < opts.reorth_ratio * before) {
        for (std::size_t i = 0; i <= j; ++i) {
          const double hij = dot(w, v[i]);
          col[i] += hij;
          axpy(-hij, v[i], w);
        }
        after = norm2(w);
      }
      col[j + 1] = after;

      for (std::size_t i = 0; i < j; ++i) {
        const double t = cs[i] * col[i] + sn[i] * col[i + 1];
        col[i + 1] = -sn[i] * col[i] + cs[i] * col[i + 1];
        col[i] = t;
      }
      const double rho = std::hypot(col[j], col[j + 1]);
      const double c = rho == 0.0 ? 1.0 : col[j] / rho;
      const double s = rho == 0.0 ? 0.0 : col[j + 1] / rho;
      cs.push_back(c);
      sn.push_back(s);
      col[j] = rho;
      col[j + 1] = 0.0;
      g.push_back(-s * g[j]);
      g[j] *= c;
      h.push_back(std::move(col));

      ++rep.iterations;
      const double est = std::abs(g[j + 1]) / nb;
      rep.residual_history.push_back(est);

      const bool breakdown = after <= 1e-14 * before || rho == 0.0;
      if (breakdown) {
        if (rho != 0.0) x = correction(j + 1);
        rep.final_residual = norm2(residual(apply, b, x)) / nb;
        rep.converged = rep.final_residual <= opts.tol;
        rep.reason = rep.converged ? StopReason::converged : StopReason::breakdown;
        stop = true;
        break;
      }
      if (est <= opts.tol) {
        Vector candidate = correction(j + 1);
        const double true_res = norm2(residual(apply, b, candidate)) / nb;
        if (true_res <= opts.tol) {
          x = std::move(candidate);
          rep.final_residual = true_res;
          rep.converged = true;
          rep.reason = StopReason::converged;
          stop = true;
          break;
        }
      }
      v.push_back(std::move(w));
      for (auto& e : v.back()) e /= after;
    }
    if (stop) break;

    x = correction(j);
    r = residual(apply, b, x);
    beta = norm2(r);
    rep.final_residual = beta / nb;
    if (rep.iterations >= opts.maxit) {
      rep.converged = rep.final_residual <= opts.tol;
      rep.reason = rep.converged ? StopReason::converged : StopReason::max_iterations;
      break;
    }
    if (beta / nb <= opts.tol) {
      rep.converged = true;
      rep.reason = StopReason::converged;
      break;
    }
  }
  rep.wall_seconds = seconds_since(t0);
  return {std::move(x), std::move(rep)};
}

}  // namespace apss
