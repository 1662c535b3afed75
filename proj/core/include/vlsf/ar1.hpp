#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vlsf {

/// Log-determinant of the n x n AR(1) correlation matrix with entries
/// rho^|i-j|: (n-1) * log(1 - rho^2).
double ar1_logdet(std::size_t n, double rho);

/// Quadratic form v' * Sigma^{-1} * v in O(n), using the tridiagonal
/// inverse of the AR(1) correlation matrix.
double ar1_precision_quadform(double rho, std::span<const double> v);

/// All n eigenvalues of the AR(1) correlation matrix, ascending.
/// Computed from the symmetric tridiagonal precision matrix and
/// inverted per eigenvalue. Each lies in ((1-rho)/(1+rho), (1+rho)/(1-rho)).
std::vector<double> ar1_eigenvalues(std::size_t n, double rho);

/// AR(1) (Kac-Murdock-Szego) correlation structure, entries rho^|i-j|.
/// Never materialized densely except through dense_for_tests().
class Ar1Covariance {
 public:
  Ar1Covariance(std::size_t n, double rho);

  std::size_t n() const { return n_; }
  double rho() const { return rho_; }

  double logdet() const { return ar1_logdet(n_, rho_); }
  std::vector<double> eigenvalues() const { return ar1_eigenvalues(n_, rho_); }
  double precision_quadform(std::span<const double> v) const;

  /// Dense materialization, test support only. Capped at n <= 512.
  /// Returned row-major.
  std::vector<double> dense_for_tests() const;

 private:
  std::size_t n_;
  double rho_;
};

namespace detail {
/// rho in [0, 1) or throws; shared by every AR(1) entry point.
void check_rho(double rho);
}  // namespace detail

}  // namespace vlsf
