#pragma once

/// \file apss/krylov.hpp
/// \brief Conjugate gradients and flexible GMRES.

#include <cstddef>
#include <string_view>
#include <utility>

#include "apss/linalg.hpp"

namespace apss {

enum class StopReason { converged, max_iterations, breakdown, diverged };

std::string_view to_string(StopReason r);

/// Outcome of an iterative run.
struct SolveReport {
  std::size_t iterations = 0;
  /// Relative residual per iteration; entry 0 is the initial residual.
  Vector residual_history;
  bool converged = false;
  double wall_seconds = 0.0;
  StopReason reason = StopReason::max_iterations;
  /// True relative residual of the returned iterate (when the solver checks it).
  double final_residual = 0.0;
};

/// CG detected p^T A p <= 0. Carries the iterate reached so far.
class CgBreakdown : public Error {
 public:
  CgBreakdown(const std::string& what, Vector iterate) : Error(what), iterate_(std::move(iterate)) {}
  const Vector& iterate() const noexcept { return iterate_; }

 private:
  Vector iterate_;
};

/// Unpreconditioned CG. Stops once ||b - Ax|| <= reduction * ||b - Ax0||;
/// after maxit iterations the iterate with the smallest residual is returned
/// with converged = false. History is relative to ||b - Ax0||.
std::pair<Vector, SolveReport> cg(const LinearMap& apply, const Vector& b, const Vector& x0,
                                  double reduction, std::size_t maxit);

/// Right preconditioner z = M^{-1} v. It may change from call to call.
using Preconditioner = LinearMap;

struct FgmresOptions {
  double tol = 1e-7;
  std::size_t maxit = 2000;
  /// 0 runs the complete (unrestarted) method; k > 0 restarts every k steps.
  std::size_t restart = 0;
  /// Second Gram-Schmidt pass when ||w_after|| < reorth_ratio * ||w_before||.
  double reorth_ratio = 1e-3;
};

/// Flexible GMRES with right preconditioning. Convergence is declared when the
/// least-squares residual estimate drops to tol * ||b|| and a true residual
/// evaluation confirms it. An empty `precond` means no preconditioning.
std::pair<Vector, SolveReport> fgmres(const LinearMap& apply, const Preconditioner& precond,
                                      const Vector& b, const Vector& x0,
                                      const FgmresOptions& opts = {});

}  // namespace apss
