#pragma once

/// \file apss/splitting.hpp
/// \brief Alternating positive semi-definite splitting (APSS).
///
/// The saddle operator is split as A1 + A2 with
///
///     A1 = [ A  B^T 0 ]      A2 = [ 0  0   0  ]
///          [ -B  0  0 ]           [ 0  0  -C^T]
///          [ 0   0  0 ]           [ 0  C   0  ]
///
/// both positive semi-definite (A1 + A1^T = diag(2A, 0, 0), A2 skew). For
/// alpha > 0 the stationary method alternates the two shifted solves
///
///     (aI + A1) x_{k+1/2} = (aI - A2) x_k + b
///     (aI + A2) x_{k+1}   = (aI - A1) x_{k+1/2} + b
///
/// and M = (aI + A1)(aI + A2) is used as a right preconditioner for FGMRES.
/// Both shifted solves reduce to SPD systems by block elimination:
///
///     (aI + A1):  (aI + A + B^T B / a) w_x = r_x - B^T r_y / a
///     (aI + A2):  (a^2 I + C C^T) w_z      = a r_z - C r_y

#include <cstddef>
#include <memory>
#include <utility>

#include "apss/krylov.hpp"
#include "apss/saddle.hpp"

namespace apss {

enum class InnerSolver {
  cg,           ///< unpreconditioned CG, relative reduction + iteration cap
  exact_dense,  ///< dense Cholesky of the two SPD systems
};

struct InnerOptions {
  InnerSolver mode = InnerSolver::cg;
  double reduction = 1e-3;
  std::size_t maxit = 200;
};

/// Counters accumulated over inner solves.
struct InnerStats {
  std::size_t solves = 0;
  std::size_t iterations = 0;
  std::size_t unconverged = 0;
};

class ApssOperator {
 public:
  /// Throws Error for alpha <= 0 or reduction outside (0, 1). In exact_dense
  /// mode the two SPD matrices are formed and factored here.
  ApssOperator(SaddleSystem sys, double alpha, InnerOptions inner = {});

  const SaddleSystem& system() const noexcept { return *sys_; }
  double alpha() const noexcept { return alpha_; }
  const InnerOptions& inner() const noexcept { return inner_; }

  /// Solves (aI + A1) w = r.
  BlockVector solve_shift_a1(const BlockVector& r, InnerStats* stats = nullptr) const;
  /// Solves (aI + A2) w = r.
  BlockVector solve_shift_a2(const BlockVector& r, InnerStats* stats = nullptr) const;

  /// M^{-1} r = (aI + A2)^{-1} (aI + A1)^{-1} r.
  Vector apply_preconditioner(const Vector& r, InnerStats* stats = nullptr) const;

  /// (aI + sign * A1) v and (aI + sign * A2) v, with sign = +1 or -1.
  Vector apply_shift_a1(const Vector& v, double sign) const;
  Vector apply_shift_a2(const Vector& v, double sign) const;

  /// M v = (aI + A1)(aI + A2) v.
  Vector apply_m(const Vector& v) const;

  /// Preconditioner callable for fgmres; stats (optional) must outlive it.
  Preconditioner as_preconditioner(InnerStats* stats = nullptr) const;

 private:
  struct DenseFactors;

  std::shared_ptr<const SaddleSystem> sys_;
  double alpha_;
  InnerOptions inner_;
  std::shared_ptr<const DenseFactors> factors_;
};

/// Quadratic surrogate Psi(a) = N a^2 - a (|A1|_F + |A2|_F) + |A1|_F |A2|_F.
double psi(const SaddleSystem& sys, double alpha);

/// Minimizer of psi: (|A1|_F + |A2|_F) / (2 N), N = n + m + l.
double estimate_alpha(const SaddleSystem& sys);

struct IterateOptions {
  double tol = 1e-7;
  std::size_t maxit = 2000;
  /// Abort when the residual exceeds this multiple of the best one seen.
  double divergence_factor = 1e6;
};

/// Stationary APSS sweeps from x0 until the relative residual of the full
/// system drops to tol. Stops with StopReason::diverged on blow-up.
std::pair<Vector, SolveReport> apss_iterate(const ApssOperator& op, const Vector& b,
                                            const Vector& x0, const IterateOptions& opts = {},
                                            InnerStats* stats = nullptr);

}  // namespace apss
