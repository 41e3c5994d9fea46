#include "apss/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "apss/io.hpp"
#include "apss/problems.hpp"

namespace apss::cli {

namespace {

using nlohmann::json;

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
}

void append_log(const std::filesystem::path& dir, const json& entry) {
  std::ofstream log(dir / "runs.jsonl", std::ios::app);
  if (!log) throw Error("cannot append to " + (dir / "runs.jsonl").string());
  log << entry.dump() << '\n';
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

json history_json(const SolveReport& rep) {
  return {{"IT", rep.iterations},
          {"RES", rep.final_residual},
          {"converged", rep.converged},
          {"stop", std::string(to_string(rep.reason))},
          {"wall_seconds", rep.wall_seconds}};
}

struct ScaledProblem {
  SaddleSystem sys;
  Vector b;
  double alpha_est = 0.0;
};

ScaledProblem prepare(const std::filesystem::path& manifest) {
  auto [scaled, rec] = scale_system(load_system(manifest));
  ScaledProblem prob{std::move(scaled), {}, 0.0};
  prob.b = rhs_for_ones(prob.sys);
  prob.alpha_est = estimate_alpha(prob.sys);
  return prob;
}

}  // namespace

std::filesystem::path cmd_gen(const GenParams& params, std::ostream& out) {
  SaddleSystem sys;
  std::map<std::string, std::string> meta;
  json logged;
  if (params.kind == "kron") {
    sys = gen_kron_example(params.p, {params.duplicate_row});
    meta = {{"generator", "kron"},
            {"p", std::to_string(params.p)},
            {"duplicate_row", params.duplicate_row ? "1" : "0"}};
    logged = {{"kind", "kron"}, {"p", params.p}, {"duplicate_row", params.duplicate_row}};
  } else if (params.kind == "random") {
    sys = gen_random_singular(params.n, params.m, params.l, params.deficiency, params.seed);
    meta = {{"generator", "random"},
            {"deficiency", std::to_string(params.deficiency)},
            {"seed", std::to_string(params.seed)}};
    logged = {{"kind", "random"}, {"n", params.n},           {"m", params.m},
              {"l", params.l},     {"deficiency", params.deficiency}};
  } else {
    throw Error("gen: unknown problem kind '" + params.kind + "' (expected kron or random)");
  }

  const auto manifest = save_system(sys, params.out_dir, meta);
  out << "wrote " << manifest.string() << "  (n=" << sys.n() << " m=" << sys.m()
      << " l=" << sys.l() << " DOF=" << sys.order() << ")\n";
  append_log(params.out_dir, {{"command", "gen"},
                              {"params", logged},
                              {"seed", params.kind == "random" ? json(params.seed) : json()},
                              {"dof", sys.order()},
                              {"IT", nullptr},
                              {"RES", nullptr},
                              {"wall_seconds", 0.0}});
  return manifest;
}

Method parse_method(const std::string& s) {
  if (s == "fgmres") return Method::fgmres;
  if (s == "fgmres+apss") return Method::fgmres_apss;
  if (s == "apss") return Method::apss;
  throw Error("unknown method '" + s + "' (expected fgmres, fgmres+apss or apss)");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::fgmres: return "fgmres";
    case Method::fgmres_apss: return "fgmres+apss";
    case Method::apss: return "apss";
  }
  return "?";
}

double resolve_alpha(const std::string& token, double alpha_est) {
  double value = std::numeric_limits<double>::quiet_NaN();
  auto number = [&token](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw Error("cannot parse alpha '" + token + "'");
    }
    if (used != s.size()) throw Error("cannot parse alpha '" + token + "'");
    return v;
  };
  if (token == "est") value = alpha_est;
  else if (token.starts_with("est*")) value = alpha_est * number(token.substr(4));
  else if (token.starts_with("est/")) value = alpha_est / number(token.substr(4));
  else if (token.ends_with("*est")) value = number(token.substr(0, token.size() - 4)) * alpha_est;
  else value = number(token);
  if (!std::isfinite(value) || !(value > 0.0))
    throw Error("alpha must be positive (got '" + token + "')");
  return value;
}

SolveOutcome cmd_solve(const SolveParams& params, std::ostream& out) {
  if (!(params.tol > 0.0)) throw Error("solve: tol must be positive");
  ensure_dir(params.out_dir);
  const auto prob = prepare(params.manifest);
  const Vector x0(prob.sys.order(), 0.0);

  SolveOutcome res;
  res.dof = prob.sys.order();
  if (params.method == Method::fgmres) {
    const LinearMap a = [&prob](const Vector& v) { return prob.sys.apply(v); };
    res.report = fgmres(a, {}, prob.b, x0, {params.tol, params.maxit, params.restart}).second;
  } else {
    res.alpha = resolve_alpha(params.alpha, prob.alpha_est);
    const ApssOperator op(prob.sys, res.alpha, params.inner);
    if (params.method == Method::fgmres_apss) {
      const LinearMap a = [&prob](const Vector& v) { return prob.sys.apply(v); };
      res.report = fgmres(a, op.as_preconditioner(&res.inner), prob.b, x0,
                          {params.tol, params.maxit, params.restart})
                       .second;
    } else {
      res.report = apss_iterate(op, prob.b, x0, {params.tol, params.maxit}, &res.inner).second;
    }
  }

  const auto& rep = res.report;
  const bool dagger = !rep.converged && rep.iterations >= params.maxit;
  out << "method " << to_string(params.method) << "  DOF " << res.dof << '\n';
  if (params.method != Method::fgmres) out << "alpha  " << fmt("%.4f", res.alpha) << '\n';
  out << "IT     " << (dagger ? std::string("†") : std::to_string(rep.iterations)) << '\n';
  out << "CPU    " << fmt("%.4f", rep.wall_seconds) << '\n';
  out << "RES    " << fmt("%.1e", rep.final_residual) << '\n';
  if (!rep.converged && !dagger) out << "stopped: " << to_string(rep.reason) << '\n';

  std::ofstream csv(params.out_dir / "residual_history.csv");
  if (!csv) throw Error("cannot write residual_history.csv");
  csv << "k,res\n";
  for (std::size_t k = 0; k < rep.residual_history.size(); ++k)
    csv << k << ',' << fmt("%.17g", rep.residual_history[k]) << '\n';

  json logged = {{"manifest", params.manifest.string()},
                 {"method", to_string(params.method)},
                 {"alpha", params.alpha},
                 {"tol", params.tol},
                 {"maxit", params.maxit},
                 {"restart", params.restart},
                 {"inner", params.inner.mode == InnerSolver::cg ? "cg" : "exact"}};
  json entry = {{"command", "solve"}, {"params", logged}, {"seed", nullptr},
                {"dof", res.dof},     {"alpha_value", res.alpha}};
  entry.update(history_json(rep));
  append_log(params.out_dir, entry);
  return res;
}

std::vector<SpectralCertificate> cmd_analyze(const AnalyzeParams& params, std::ostream& out) {
  if (params.alphas.empty()) throw Error("analyze: no alpha values given");
  ensure_dir(params.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  const auto prob = prepare(params.manifest);
  if (prob.sys.order() > params.options.dense_cap)
    throw Error("analyze: DOF " + std::to_string(prob.sys.order()) + " exceeds the dense cap " +
                std::to_string(params.options.dense_cap) + "; generate a smaller problem (e.g. smaller p)");

  std::vector<double> alphas;
  for (const auto& tok : params.alphas) alphas.push_back(resolve_alpha(tok, prob.alpha_est));

  write_eigenvalue_csv(spectrum(to_dense(assemble_full(prob.sys))), params.out_dir / "eigs_A.csv");
  const auto witness = singularity_witness(prob.sys, params.options.rank_tol);
  out << "DOF " << prob.sys.order() << "  alpha_est " << fmt("%.4f", prob.alpha_est) << '\n';
  out << "dim null(B^T)&null(C) = " << witness.null_bt_and_c
      << "  dim null(C^T) = " << witness.null_ct << '\n';

  std::vector<SpectralCertificate> certs;
  json rows = json::array();
  for (double a : alphas) {
    auto cert = certify(prob.sys, a, params.options);
    out << "alpha " << fmt("%.6g", a) << "  theta " << fmt("%.6f", cert.pseudo_spectral_radius)
        << "  unit_eigs " << cert.unit_eigen_count << "  index_one "
        << (cert.index_one ? "true" : "false") << "  kellogg(A1) " << fmt("%.10f", cert.kellogg_a1)
        << "  kellogg(A2) " << fmt("%.10f", cert.kellogg_a2) << "  semi_convergent "
        << (cert.semi_convergent() ? "yes" : "no") << '\n';
    write_eigenvalue_csv(preconditioned_spectrum(prob.sys, a, params.options.dense_cap),
                         params.out_dir / ("eigs_precond_alpha=" + fmt("%.6g", a) + ".csv"));
    rows.push_back({{"alpha", a},
                    {"theta", cert.pseudo_spectral_radius},
                    {"unit_eigen_count", cert.unit_eigen_count},
                    {"index_one", cert.index_one},
                    {"kellogg_a1", cert.kellogg_a1},
                    {"kellogg_a2", cert.kellogg_a2}});
    certs.push_back(std::move(cert));
  }
  append_log(params.out_dir,
             {{"command", "analyze"},
              {"params", {{"manifest", params.manifest.string()}, {"alphas", params.alphas}}},
              {"seed", nullptr},
              {"IT", nullptr},
              {"RES", nullptr},
              {"certificates", rows},
              {"wall_seconds",
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}});
  return certs;
}

std::vector<SweepRow> cmd_sweep(const SweepParams& params, std::ostream& out) {
  if (params.grid.empty()) throw Error("sweep: empty alpha grid");
  ensure_dir(params.out_dir);
  const auto prob = prepare(params.manifest);

  std::vector<double> alphas;
  for (const auto& tok : params.grid) alphas.push_back(resolve_alpha(tok, prob.alpha_est));

  const Vector x0(prob.sys.order(), 0.0);
  const LinearMap a = [&prob](const Vector& v) { return prob.sys.apply(v); };
  const bool dense_ok = prob.sys.order() <= params.options.dense_cap;

  std::vector<SweepRow> rows;
  std::ofstream csv(params.out_dir / "sweep.csv");
  if (!csv) throw Error("cannot write sweep.csv");
  csv << "alpha,is_est,IT,CPU,RES,theta\n";
  out << "alpha        IT     CPU       RES      theta\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    SweepRow row;
    row.alpha = alphas[i];
    row.is_estimate = params.grid[i] == "est";
    const ApssOperator op(prob.sys, row.alpha, params.inner);
    const auto rep =
        fgmres(a, op.as_preconditioner(), prob.b, x0, {params.tol, params.maxit, 0}).second;
    row.iterations = rep.iterations;
    row.converged = rep.converged;
    row.cpu = rep.wall_seconds;
    row.res = rep.final_residual;
    if (dense_ok) {
      const auto eigs = spectrum(build_iteration_matrix(prob.sys, row.alpha, params.options.dense_cap));
      row.theta = pseudo_spectral_radius(eigs, params.options.unit_tol).radius;
    } else {
      row.theta = std::numeric_limits<double>::quiet_NaN();
    }
    csv << fmt("%.17g", row.alpha) << ',' << (row.is_estimate ? 1 : 0) << ','
        << (row.converged ? std::to_string(row.iterations) : std::string("dagger")) << ','
        << fmt("%.6g", row.cpu) << ',' << fmt("%.6g", row.res) << ',' << fmt("%.17g", row.theta)
        << '\n';
    out << fmt("%-12.6g", row.alpha) << ' '
        << (row.converged ? fmt("%-6.0f", static_cast<double>(row.iterations)) : std::string("†     "))
        << fmt("%-9.4f", row.cpu) << ' ' << fmt("%-8.1e", row.res) << ' ' << fmt("%.6f", row.theta)
        << (row.is_estimate ? "  <- alpha_est" : "") << '\n';
    append_log(params.out_dir, {{"command", "sweep"},
                                {"params", {{"manifest", params.manifest.string()},
                                            {"alpha", row.alpha},
                                            {"tol", params.tol},
                                            {"maxit", params.maxit}}},
                                {"seed", nullptr},
                                {"IT", row.iterations},
                                {"RES", row.res},
                                {"theta", dense_ok ? json(row.theta) : json()},
                                {"wall_seconds", row.cpu}});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace apss::cli
