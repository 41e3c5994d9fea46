#include "apss/linalg.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace apss {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

NormEstimate operator_two_norm(const LinearMap& apply, const LinearMap& adjoint, std::size_t dim,
                               double tol, std::size_t maxit) {
  NormEstimate est;
  if (dim == 0) {
    est.converged = true;
    return est;
  }
  // Deterministic start with all components excited.
  Vector x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = 1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i));
  const double nx = norm2(x);
  for (auto& v : x) v /= nx;

  double lambda = 0.0;
  for (std::size_t k = 1; k <= maxit; ++k) {
    Vector y = adjoint(apply(x));
    if (y.size() != dim) throw Error("operator_two_norm: operator changed the dimension");
    const double rayleigh = dot(x, y);
    const double ny = norm2(y);
    est.iterations = k;
    if (ny == 0.0) {
      est.value = 0.0;
      est.converged = true;
      return est;
    }
    const double prev = lambda;
    lambda = rayleigh;
    for (std::size_t i = 0; i < dim; ++i) x[i] = y[i] / ny;
    if (k > 1 && std::abs(lambda - prev) <= tol * std::abs(lambda)) {
      est.converged = true;
      break;
    }
  }
  est.value = std::sqrt(std::max(lambda, 0.0));
  return est;
}

NormEstimate operator_two_norm(const LinearMap& apply, std::size_t dim, double tol,
                               std::size_t maxit) {
  Eigen::MatrixXd dense(dim, dim);
  Vector e(dim, 0.0);
  for (std::size_t j = 0; j < dim; ++j) {
    e[j] = 1.0;
    const Vector col = apply(e);
    if (col.size() != dim) throw Error("operator_two_norm: operator changed the dimension");
    for (std::size_t i = 0; i < dim; ++i) dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    e[j] = 0.0;
  }
  auto fwd = [&dense](const Vector& x) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    Eigen::VectorXd y = dense * xv;
    return Vector(y.data(), y.data() + y.size());
  };
  auto adj = [&dense](const Vector& x) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    Eigen::VectorXd y = dense.transpose() * xv;
    return Vector(y.data(), y.data() + y.size());
  };
  return operator_two_norm(fwd, adj, dim, tol, maxit);
}

}  // namespace apss
