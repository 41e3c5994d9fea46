#include "apss/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "apss/linalg.hpp"

namespace apss {

namespace {

struct ShiftedPair {
  DenseMatrix plus1, minus1, plus2, minus2;
};

ShiftedPair shifted_blocks(const SaddleSystem& sys, double alpha, std::size_t cap) {
  if (!(alpha > 0.0)) throw Error("alpha must be positive");
  if (sys.order() > cap)
    throw Error("system order " + std::to_string(sys.order()) + " exceeds the dense cap " +
                std::to_string(cap) + "; use a smaller problem");
  const auto [a1s, a2s] = assemble_split(sys);
  const DenseMatrix a1 = to_dense(a1s);
  const DenseMatrix a2 = to_dense(a2s);
  const auto n = static_cast<Eigen::Index>(sys.order());
  const DenseMatrix shift = alpha * DenseMatrix::Identity(n, n);
  return {shift + a1, shift - a1, shift + a2, shift - a2};
}

}  // namespace

DenseMatrix build_iteration_matrix(const SaddleSystem& sys, double alpha, std::size_t dense_cap) {
  const auto s = shifted_blocks(sys, alpha, dense_cap);
  const Eigen::PartialPivLU<DenseMatrix> lu1(s.plus1), lu2(s.plus2);
  const DenseMatrix right = lu1.solve(s.minus2);
  return lu2.solve(s.minus1 * right);
}

DenseMatrix build_similar_matrix(const SaddleSystem& sys, double alpha, std::size_t dense_cap) {
  const auto s = shifted_blocks(sys, alpha, dense_cap);
  const Eigen::PartialPivLU<DenseMatrix> lu1(s.plus1), lu2(s.plus2);
  const DenseMatrix right = lu2.solve(s.minus2);
  return lu1.solve(s.minus1 * right);
}

DenseMatrix build_preconditioned_matrix(const SaddleSystem& sys, double alpha,
                                        std::size_t dense_cap) {
  const auto s = shifted_blocks(sys, alpha, dense_cap);
  const Eigen::PartialPivLU<DenseMatrix> lu1(s.plus1), lu2(s.plus2);
  return lu2.solve(lu1.solve(to_dense(assemble_full(sys))));
}

ComplexVector spectrum(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw Error("spectrum: matrix is not square");
  if (m.rows() == 0) return {};
  Eigen::EigenSolver<DenseMatrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw Error("spectrum: eigenvalue iteration did not converge");
  return es.eigenvalues();
}

PseudoRadius pseudo_spectral_radius(const ComplexVector& eigs, double unit_tol) {
  PseudoRadius out;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    if (std::abs(eigs[i] - 1.0) <= unit_tol) ++out.unit_count;
    else out.radius = std::max(out.radius, std::abs(eigs[i]));
  }
  return out;
}

std::size_t numerical_rank(const DenseMatrix& m, double rank_tol) {
  if (m.size() == 0) return 0;
  const Eigen::VectorXd sv = Eigen::BDCSVD<DenseMatrix>(m).singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  const double threshold =
      rank_tol * sv[0] * static_cast<double>(std::max(m.rows(), m.cols()));
  return static_cast<std::size_t>((sv.array() > threshold).count());
}

bool index_is_one(const DenseMatrix& t, double rank_tol) {
  if (t.rows() != t.cols()) throw Error("index_is_one: matrix is not square");
  const DenseMatrix e = DenseMatrix::Identity(t.rows(), t.cols()) - t;
  return numerical_rank(e, rank_tol) == numerical_rank(e * e, rank_tol);
}

double kellogg_norm(const SaddleSystem& sys, SplitPart which, double alpha) {
  const auto s = shifted_blocks(sys, alpha, std::max<std::size_t>(sys.order(), 1));
  const DenseMatrix k = which == SplitPart::a1
                            ? DenseMatrix(Eigen::PartialPivLU<DenseMatrix>(s.plus1).solve(s.minus1))
                            : DenseMatrix(Eigen::PartialPivLU<DenseMatrix>(s.plus2).solve(s.minus2));
  const LinearMap fwd = [&k](const Vector& x) { return to_vector(k * as_eigen(x)); };
  const LinearMap adj = [&k](const Vector& x) { return to_vector(k.transpose() * as_eigen(x)); };
  return operator_two_norm(fwd, adj, sys.order()).value;
}

ComplexVector preconditioned_spectrum(const SaddleSystem& sys, double alpha, std::size_t dense_cap) {
  return spectrum(build_preconditioned_matrix(sys, alpha, dense_cap));
}

SpectralCertificate certify(const SaddleSystem& sys, double alpha, const AnalysisOptions& opts) {
  SpectralCertificate cert;
  cert.alpha = alpha;
  cert.unit_tol = opts.unit_tol;
  const DenseMatrix t = build_iteration_matrix(sys, alpha, opts.dense_cap);
  cert.eigenvalues = spectrum(t);
  const auto pr = pseudo_spectral_radius(cert.eigenvalues, opts.unit_tol);
  cert.pseudo_spectral_radius = pr.radius;
  cert.unit_eigen_count = pr.unit_count;
  cert.index_one = index_is_one(t, opts.rank_tol);
  cert.kellogg_a1 = kellogg_norm(sys, SplitPart::a1, alpha);
  cert.kellogg_a2 = kellogg_norm(sys, SplitPart::a2, alpha);
  return cert;
}

bool eigenvalues_match(const ComplexVector& a, const ComplexVector& b, double radius) {
  if (a.size() != b.size()) return false;
  auto sorted = [](const ComplexVector& v) {
    std::vector<std::complex<double>> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end(), [](auto x, auto y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return out;
  };
  const auto sa = sorted(a);
  const auto sb = sorted(b);
  std::vector<bool> used(sb.size(), false);
  for (const auto& x : sa) {
    std::size_t best = sb.size();
    double best_dist = radius;
    for (std::size_t j = 0; j < sb.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - sb[j]);
      if (d <= best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best == sb.size()) return false;
    used[best] = true;
  }
  return true;
}

SingularityWitness singularity_witness(const SaddleSystem& sys, double rank_tol) {
  const DenseMatrix b = to_dense(sys.B());
  const DenseMatrix c = to_dense(sys.C());
  DenseMatrix stacked(b.cols() + c.rows(), b.rows());
  stacked << b.transpose(), c;
  SingularityWitness w;
  w.null_bt_and_c = sys.m() - numerical_rank(stacked, rank_tol);
  w.null_ct = sys.l() - numerical_rank(c.transpose(), rank_tol);
  return w;
}

}  // namespace apss
