#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vlsf {

/// Incremental Cholesky factor of K_n = diag(x^n) Sigma diag(x^n) + sigma_z^2 I
/// for the AR(1) correlation Sigma, extended one row per appended symbol.
///
/// The rank-one prediction structure of the AR(1) process collapses the
/// usual triangular solve: row n+1 of the factor is x_{n+1} * rho * u_n
/// followed by the new pivot, where u_n = L_n^{-1} c_n and c_n is the
/// scaled correlation column. Appending therefore costs O(n) arithmetic.
/// The running log-density of the observed prefix comes for free from
/// the normalized innovations.
///
/// State accumulates; one instance belongs to one logical thread.
class SeqCholesky {
 public:
  /// store_factor keeps the triangular rows for inspection; the
  /// decoder's hot path runs without them on O(1) state.
  SeqCholesky(double rho, double sigma_z2, bool store_factor = false);

  /// Extends the factor by one symbol and folds the observation into
  /// the running log-density.
  void append(double x, double y);

  std::size_t size() const { return n_; }

  /// log f_{Y^n|X^n}(y^n|x^n) for the current prefix.
  double log_density() const;

  /// Packed lower-triangular factor rows (row k holds k entries).
  /// Requires store_factor.
  const std::vector<double>& factor_packed() const;

  /// Dense n x n lower-triangular factor, test support. Requires store_factor.
  std::vector<double> factor_dense() const;

 private:
  double rho_;
  double sigma_z2_;
  bool store_factor_;

  std::size_t n_ = 0;
  double explained_ = 0.0;     // ||u||^2; fading prediction variance is 1 - rho^2 * explained
  double cross_ = 0.0;         // u . v with v the normalized innovations
  double sum_log_diag_ = 0.0;  // sum log d_k
  double sum_innov2_ = 0.0;    // sum v_k^2

  std::vector<double> u_;      // L^{-1} c, kept only when storing the factor
  std::vector<double> rows_;   // packed factor
};

/// Per-prefix conditional Gaussian log-densities
/// (log f_{Y^n|X^n}(y^n|x^n))_{n=1..N} via incremental factor extension.
std::vector<double> seq_gaussian_logpdf(std::span<const double> x, std::span<const double> y,
                                        double rho, double sigma_z2);

}  // namespace vlsf
