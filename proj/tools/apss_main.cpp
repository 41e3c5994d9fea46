// apss: generate, solve and analyze singular three-by-three saddle point systems.

#include <iostream>

#include <CLI11.hpp>

#include "apss/cli.hpp"

namespace {

apss::InnerOptions inner_from(const std::string& mode, double reduction, std::size_t maxit) {
  apss::InnerOptions inner;
  if (mode == "cg") inner.mode = apss::InnerSolver::cg;
  else if (mode == "exact") inner.mode = apss::InnerSolver::exact_dense;
  else throw apss::Error("--inner must be 'cg' or 'exact'");
  inner.reduction = reduction;
  inner.maxit = maxit;
  return inner;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"APSS solver toolkit for singular three-by-three saddle point systems"};
  app.require_subcommand(1);

  apss::cli::GenParams gen;
  std::string gen_out = ".";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a test system (MatrixMarket + manifest)");
  gen_cmd->add_option("kind", gen.kind, "kron | random")->required();
  gen_cmd->add_option("--p", gen.p, "Grid size for kron (even)");
  gen_cmd->add_flag("--duplicate-row", gen.duplicate_row, "kron: stack (C1; c2; c2)");
  gen_cmd->add_option("--n", gen.n, "random: size of A");
  gen_cmd->add_option("--m", gen.m, "random: rows of B");
  gen_cmd->add_option("--l", gen.l, "random: rows of C");
  gen_cmd->add_option("--deficiency", gen.deficiency, "random: rank deficiency of C");
  gen_cmd->add_option("--seed", gen.seed, "random: seed");
  gen_cmd->add_option("--out", gen_out, "Output directory");

  apss::cli::SolveParams solve;
  std::string method = "fgmres+apss", inner_mode = "cg", solve_out = ".", manifest;
  double inner_red = 1e-3;
  std::size_t inner_maxit = 200;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a system for the all-ones solution");
  solve_cmd->add_option("manifest", manifest, "System manifest")->required();
  solve_cmd->add_option("--method", method, "fgmres | fgmres+apss | apss");
  solve_cmd->add_option("--alpha", solve.alpha, "est, est*K, est/K or a number");
  solve_cmd->add_option("--tol", solve.tol, "Relative residual tolerance");
  solve_cmd->add_option("--maxit", solve.maxit, "Iteration cap");
  solve_cmd->add_option("--restart", solve.restart, "FGMRES restart length (0 = none)");
  solve_cmd->add_option("--inner", inner_mode, "cg | exact");
  solve_cmd->add_option("--inner-reduction", inner_red, "Inner CG residual reduction");
  solve_cmd->add_option("--inner-maxit", inner_maxit, "Inner CG iteration cap");
  solve_cmd->add_option("--out", solve_out, "Output directory");

  apss::cli::AnalyzeParams analyze;
  std::string analyze_out = ".", analyze_manifest;
  auto* analyze_cmd = app.add_subcommand("analyze", "Dense semi-convergence certificate");
  analyze_cmd->add_option("manifest", analyze_manifest, "System manifest")->required();
  analyze_cmd->add_option("--alpha", analyze.alphas, "Alpha values")->delimiter(',');
  analyze_cmd->add_option("--unit-tol", analyze.options.unit_tol, "Unit eigenvalue tolerance");
  analyze_cmd->add_option("--rank-tol", analyze.options.rank_tol, "Numerical rank tolerance");
  analyze_cmd->add_option("--dense-cap", analyze.options.dense_cap, "Largest order analyzed");
  analyze_cmd->add_option("--out", analyze_out, "Output directory");

  apss::cli::SweepParams sweep;
  std::string sweep_out = ".", sweep_manifest;
  auto* sweep_cmd = app.add_subcommand("sweep", "FGMRES+APSS over a grid of alpha values");
  sweep_cmd->add_option("manifest", sweep_manifest, "System manifest")->required();
  sweep_cmd->add_option("--alpha", sweep.grid, "Alpha grid, e.g. est/4,est,est*4")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--tol", sweep.tol, "Relative residual tolerance");
  sweep_cmd->add_option("--maxit", sweep.maxit, "Iteration cap");
  sweep_cmd->add_option("--out", sweep_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      gen.out_dir = gen_out;
      apss::cli::cmd_gen(gen, std::cout);
      return 0;
    }
    if (*solve_cmd) {
      solve.manifest = manifest;
      solve.method = apss::cli::parse_method(method);
      solve.inner = inner_from(inner_mode, inner_red, inner_maxit);
      solve.out_dir = solve_out;
      const auto res = apss::cli::cmd_solve(solve, std::cout);
      return res.report.converged ? 0 : 2;
    }
    if (*analyze_cmd) {
      analyze.manifest = analyze_manifest;
      analyze.out_dir = analyze_out;
      apss::cli::cmd_analyze(analyze, std::cout);
      return 0;
    }
    if (*sweep_cmd) {
      sweep.manifest = sweep_manifest;
      sweep.out_dir = sweep_out;
      apss::cli::cmd_sweep(sweep, std::cout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
