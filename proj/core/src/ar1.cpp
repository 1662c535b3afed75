#include "vlsf/ar1.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace vlsf {

namespace detail {

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::domain_error("AR(1) correlation must lie in [0, 1), got " + std::to_string(rho));
  }
}

}  // namespace detail

double ar1_logdet(std::size_t n, double rho) {
  detail::check_rho(rho);
  if (n < 1) throw std::domain_error("ar1_logdet: n must be positive");
  return static_cast<double>(n - 1) * std::log1p(-rho * rho);
}

double ar1_precision_quadform(double rho, std::span<const double> v) {
  detail::check_rho(rho);
  const std::size_t n = v.size();
  if (n == 0) throw std::domain_error("ar1_precision_quadform: empty vector");
  if (n == 1) return v[0] * v[0];

  // Sigma^{-1} = tridiag(-rho, d_k, -rho) / (1 - rho^2) with d_1 = d_n = 1
  // and interior entries 1 + rho^2.
  double diag_sum = v[0] * v[0] + v[n - 1] * v[n - 1];
  for (std::size_t k = 1; k + 1 < n; ++k) diag_sum += (1.0 + rho * rho) * v[k] * v[k];
  double off_sum = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) off_sum += v[k] * v[k + 1];
  return (diag_sum - 2.0 * rho * off_sum) / (1.0 - rho * rho);
}

std::vector<double> ar1_eigenvalues(std::size_t n, double rho) {
  detail::check_rho(rho);
  if (n < 1) throw std::domain_error("ar1_eigenvalues: n must be positive");
  if (rho == 0.0) return std::vector<double>(n, 1.0);
  if (n == 1) return {1.0};

  const double scale = 1.0 / (1.0 - rho * rho);
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, (1.0 + rho * rho) * scale);
  diag(0) = scale;
  diag(n - 1) = scale;
  Eigen::VectorXd subdiag = Eigen::VectorXd::Constant(n - 1, -rho * scale);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("ar1_eigenvalues: tridiagonal QR failed to converge");
  }

  // Precision eigenvalues descend where covariance eigenvalues ascend.
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / solver.eigenvalues()(n - 1 - i);
  return out;
}

Ar1Covariance::Ar1Covariance(std::size_t n, double rho) : n_(n), rho_(rho) {
  detail::check_rho(rho);
  if (n < 1) throw std::domain_error("Ar1Covariance: n must be positive");
}

double Ar1Covariance::precision_quadform(std::span<const double> v) const {
  if (v.size() != n_) throw std::domain_error("Ar1Covariance: vector length mismatch");
  return ar1_precision_quadform(rho_, v);
}

std::vector<double> Ar1Covariance::dense_for_tests() const {
  if (n_ > 512) throw std::domain_error("dense_for_tests: capped at n <= 512");
  std::vector<double> out(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      out[i * n_ + j] = std::pow(rho_, static_cast<double>(i > j ? i - j : j - i));
    }
  }
  return out;
}

}  // namespace vlsf
