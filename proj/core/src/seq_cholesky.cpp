#include "vlsf/seq_cholesky.hpp"

#include <cmath>
#include <stdexcept>

#include "vlsf/ar1.hpp"

namespace vlsf {

SeqCholesky::SeqCholesky(double rho, double sigma_z2, bool store_factor)
    : rho_(rho), sigma_z2_(sigma_z2), store_factor_(store_factor) {
  detail::check_rho(rho);
  if (!(sigma_z2 > 0.0)) {
    throw std::domain_error("SeqCholesky: sigma_z2 must be positive");
  }
}

void SeqCholesky::append(double x, double y) {
  const double pred_var = 1.0 - rho_ * rho_ * explained_;
  const double pivot2 = x * x * pred_var + sigma_z2_;
  const double pivot = std::sqrt(pivot2);

  const double innovation = (y - x * rho_ * cross_) / pivot;
  const double u_new = x * pred_var / pivot;

  if (store_factor_) {
    for (std::size_t j = 0; j < n_; ++j) rows_.push_back(x * rho_ * u_[j]);
    rows_.push_back(pivot);
    for (double& uj : u_) uj *= rho_;
    u_.push_back(u_new);
  }

  explained_ = rho_ * rho_ * explained_ + u_new * u_new;
  cross_ = rho_ * cross_ + u_new * innovation;
  sum_log_diag_ += std::log(pivot);
  sum_innov2_ += innovation * innovation;
  ++n_;
}

double SeqCholesky::log_density() const {
  if (n_ == 0) throw std::logic_error("SeqCholesky: no symbols appended");
  constexpr double kLog2Pi = 1.8378770664093454836;
  return -0.5 * static_cast<double>(n_) * kLog2Pi - sum_log_diag_ - 0.5 * sum_innov2_;
}

const std::vector<double>& SeqCholesky::factor_packed() const {
  if (!store_factor_) throw std::logic_error("SeqCholesky: factor not stored");
  return rows_;
}

std::vector<double> SeqCholesky::factor_dense() const {
  if (!store_factor_) throw std::logic_error("SeqCholesky: factor not stored");
  std::vector<double> dense(n_ * n_, 0.0);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) dense[i * n_ + j] = rows_[pos++];
  }
  return dense;
}

std::vector<double> seq_gaussian_logpdf(std::span<const double> x, std::span<const double> y,
                                        double rho, double sigma_z2) {
  if (x.size() != y.size()) throw std::domain_error("seq_gaussian_logpdf: length mismatch");
  if (x.empty()) throw std::domain_error("seq_gaussian_logpdf: empty input");
  SeqCholesky factor(rho, sigma_z2);
  std::vector<double> out;
  out.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    factor.append(x[k], y[k]);
    out.push_back(factor.log_density());
  }
  return out;
}

}  // namespace vlsf
