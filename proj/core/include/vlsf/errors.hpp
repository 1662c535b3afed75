#pragma once

#include <stdexcept>
#include <string>

namespace vlsf {

/// Thrown when a (r, sigma_h2) pair violates the reference-measure
/// feasibility condition. The message names the violated inequality.
class FeasibilityError : public std::domain_error {
 public:
  /// Spectral-supremum form: sigma_h2 must exceed ((r-1)/r)*(1+rho)/(1-rho).
  FeasibilityError(double r, double sigma_h2, double rho, double floor)
      : std::domain_error("infeasible reference parameters: sigma_h2 = " +
                          std::to_string(sigma_h2) +
                          " must exceed ((r-1)/r)*(1+rho)/(1-rho) = " + std::to_string(floor) +
                          " (r = " + std::to_string(r) + ", rho = " + std::to_string(rho) + ")"),
        r(r),
        sigma_h2(sigma_h2),
        rho(rho),
        floor(floor) {}

  /// Per-eigenvalue runtime guard: sigma_h2 must exceed ((r-1)/r)*lambda.
  FeasibilityError(double r, double sigma_h2, double lambda)
      : std::domain_error("infeasible reference parameters: sigma_h2 = " +
                          std::to_string(sigma_h2) + " must exceed ((r-1)/r)*lambda = " +
                          std::to_string((r - 1.0) / r * lambda) + " for covariance eigenvalue " +
                          std::to_string(lambda) + " (r = " + std::to_string(r) + ")"),
        r(r),
        sigma_h2(sigma_h2),
        rho(0.0),
        floor((r - 1.0) / r * lambda) {}

  double r;
  double sigma_h2;
  double rho;
  double floor;
};

/// Thrown when an adaptive quadrature fails to converge within its node
/// budget. Carries the last two estimates for diagnosis.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : std::runtime_error(what + " (last estimates " + std::to_string(previous) + ", " +
                           std::to_string(last) + ")"),
        previous_estimate(previous),
        last_estimate(last) {}

  double previous_estimate;
  double last_estimate;
};

}  // namespace vlsf
