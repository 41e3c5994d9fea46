#pragma once

/// \file apss/analysis.hpp
/// \brief Dense spectral certificates for the APSS iteration.
///
/// For a singular but consistent system the stationary iteration
/// x_{k+1} = T x_k + f converges for every x0 exactly when index(I - T) = 1
/// and every eigenvalue of T other than 1 lies strictly inside the unit disk.
/// Everything here works on dense matrices and is meant for orders up to a
/// few thousand.

#include <cstddef>

#include "apss/dense.hpp"
#include "apss/saddle.hpp"

namespace apss {

struct AnalysisOptions {
  std::size_t dense_cap = 2000;
  /// |lambda - 1| <= unit_tol counts as the eigenvalue 1.
  double unit_tol = 1e-6;
  /// Singular values below rank_tol * sigma_max * dim count as zero.
  double rank_tol = 1e-12;
};

enum class SplitPart { a1, a2 };

/// T = (aI + A2)^{-1} (aI - A1) (aI + A1)^{-1} (aI - A2), via dense LU.
DenseMatrix build_iteration_matrix(const SaddleSystem& sys, double alpha,
                                   std::size_t dense_cap = 2000);

/// L = (aI + A1)^{-1} (aI - A1) (aI + A2)^{-1} (aI - A2), similar to T.
DenseMatrix build_similar_matrix(const SaddleSystem& sys, double alpha,
                                 std::size_t dense_cap = 2000);

/// M^{-1} * full, with M = (aI + A1)(aI + A2).
DenseMatrix build_preconditioned_matrix(const SaddleSystem& sys, double alpha,
                                        std::size_t dense_cap = 2000);

/// All eigenvalues of a real square matrix (Hessenberg QR).
ComplexVector spectrum(const DenseMatrix& m);

struct PseudoRadius {
  double radius = 0.0;          ///< max |lambda| over lambda != 1 (0 if none)
  std::size_t unit_count = 0;   ///< eigenvalues within unit_tol of 1
};

PseudoRadius pseudo_spectral_radius(const ComplexVector& eigs, double unit_tol = 1e-6);

/// Number of singular values above rank_tol * sigma_max * max(rows, cols).
std::size_t numerical_rank(const DenseMatrix& m, double rank_tol = 1e-12);

/// index(I - T) = 1, tested as rank(I - T) == rank((I - T)^2).
bool index_is_one(const DenseMatrix& t, double rank_tol = 1e-12);

/// ||(aI + Ai)^{-1} (aI - Ai)||_2 by power iteration.
double kellogg_norm(const SaddleSystem& sys, SplitPart which, double alpha);

/// Eigenvalues of M^{-1} * full.
ComplexVector preconditioned_spectrum(const SaddleSystem& sys, double alpha,
                                      std::size_t dense_cap = 2000);

struct SpectralCertificate {
  double alpha = 0.0;
  ComplexVector eigenvalues;  ///< of T
  std::size_t unit_eigen_count = 0;
  double pseudo_spectral_radius = 0.0;
  bool index_one = false;
  double kellogg_a1 = 0.0;
  double kellogg_a2 = 0.0;
  double unit_tol = 0.0;

  /// radius < 1 and index one: the stationary method is semi-convergent.
  bool semi_convergent() const { return pseudo_spectral_radius < 1.0 && index_one; }
};

SpectralCertificate certify(const SaddleSystem& sys, double alpha, const AnalysisOptions& opts = {});

/// True when the two multisets pair up one-to-one within `radius`.
bool eigenvalues_match(const ComplexVector& a, const ComplexVector& b, double radius);

/// Dimensions of null(B^T) ∩ null(C) (in R^m) and null(C^T) (in R^l). A
/// singular full operator has at least one of them nonzero.
struct SingularityWitness {
  std::size_t null_bt_and_c = 0;
  std::size_t null_ct = 0;
};

SingularityWitness singularity_witness(const SaddleSystem& sys, double rank_tol = 1e-12);

}  // namespace apss
