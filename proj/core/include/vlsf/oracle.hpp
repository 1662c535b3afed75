#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "vlsf/channel.hpp"

namespace vlsf {

/// Monte Carlo estimate with its standard error. Reproducible from the
/// seed; warning is empty unless the estimator self-diagnosed trouble
/// (degenerate effective sample size, heavy-tailed weights).
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  std::string warning;
};

/// CSV layout: value, std_error, samples, seed.
void write_mc_estimate_csv(const McEstimate& estimate, std::ostream& os);

/// Brute-force estimate of log f_{Y^n}(y^n): fading paths are sampled
/// from the correlated law, the Gaussian input is marginalized per
/// symbol in closed form, and the mixture is averaged by log-sum-exp.
/// Standard error via the delta method on the log. Guarded to n <= 12
/// where plain Monte Carlo still has usable variance.
McEstimate mc_log_output_density(std::span<const double> y, const ChannelParams& channel,
                                 std::size_t samples, std::uint64_t seed);

/// Exact information density for the memoryless case rho = 0, where the
/// marginal output density factorizes per symbol and each factor is a
/// one-dimensional Gaussian integral.
double iid_exact_info_density(std::span<const double> x, std::span<const double> y,
                              const ChannelParams& channel, double tol = 1e-9);

/// Brute-force estimate of E_Q[L^r], sampling from the i.i.d. reference
/// and evaluating the Gaussian density ratio in the log domain. n <= 8.
McEstimate mc_renyi_moment(std::size_t n, double rho, double sigma_h2, double r,
                           std::size_t samples, std::uint64_t seed);

/// Brute-force estimate of D(P_{H^n} || Q_{H^n}), sampling fading paths
/// from the correlated law and averaging the log likelihood ratio.
McEstimate mc_kl_divergence(std::size_t n, double rho, double sigma_h2, std::size_t samples,
                            std::uint64_t seed);

}  // namespace vlsf
