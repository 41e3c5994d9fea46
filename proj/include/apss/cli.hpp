#pragma once

/// \file apss/cli.hpp
/// Command implementations behind the `apss` executable. Each command writes
/// a human-readable report to `out`, its artifacts into `out_dir`, and appends
/// one JSON object per run to `out_dir/runs.jsonl`.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "apss/analysis.hpp"
#include "apss/krylov.hpp"
#include "apss/splitting.hpp"

namespace apss::cli {

struct GenParams {
  std::string kind = "kron";  ///< "kron" or "random"
  std::size_t p = 8;
  bool duplicate_row = false;
  std::size_t n = 20, m = 10, l = 6, deficiency = 2;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
};

/// Writes A.mtx, B.mtx, C.mtx and manifest.txt; returns the manifest path.
std::filesystem::path cmd_gen(const GenParams& params, std::ostream& out);

enum class Method { fgmres, fgmres_apss, apss };

Method parse_method(const std::string& s);
std::string to_string(Method m);

/// Resolves "est", "est*K", "est/K", "K*est" or a plain number against alpha_est.
/// Throws Error unless the result is positive and finite.
double resolve_alpha(const std::string& token, double alpha_est);

struct SolveParams {
  std::filesystem::path manifest;
  Method method = Method::fgmres_apss;
  std::string alpha = "est";
  double tol = 1e-7;
  std::size_t maxit = 2000;
  std::size_t restart = 0;
  InnerOptions inner{};
  std::filesystem::path out_dir = ".";
};

struct SolveOutcome {
  std::size_t dof = 0;
  double alpha = 0.0;  ///< 0 for unpreconditioned FGMRES
  SolveReport report;
  InnerStats inner;
};

/// Scales the system, builds b for the all-ones solution, solves from x0 = 0,
/// prints an IT/CPU/RES row (IT is a dagger when maxit was exhausted) and
/// writes residual_history.csv (`k,res`).
SolveOutcome cmd_solve(const SolveParams& params, std::ostream& out);

struct AnalyzeParams {
  std::filesystem::path manifest;
  std::vector<std::string> alphas{"est"};
  AnalysisOptions options{};
  std::filesystem::path out_dir = ".";
};

/// Per alpha: certificate lines plus eigs_precond_alpha=<v>.csv; eigs_A.csv once.
std::vector<SpectralCertificate> cmd_analyze(const AnalyzeParams& params, std::ostream& out);

struct SweepParams {
  std::filesystem::path manifest;
  std::vector<std::string> grid;
  double tol = 1e-7;
  std::size_t maxit = 2000;
  InnerOptions inner{};
  AnalysisOptions options{};
  std::filesystem::path out_dir = ".";
};

struct SweepRow {
  double alpha = 0.0;
  bool is_estimate = false;
  std::size_t iterations = 0;
  bool converged = false;
  double cpu = 0.0;
  double res = 0.0;
  double theta = 0.0;  ///< NaN when the order exceeds the dense cap
};

/// FGMRES+APSS for every alpha in the grid (one row each); rows whose token
/// is "est" are marked as the estimate. Writes sweep.csv.
std::vector<SweepRow> cmd_sweep(const SweepParams& params, std::ostream& out);

}  // namespace apss::cli
