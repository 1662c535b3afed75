#pragma once

#include <functional>

namespace vlsf {

/// E[f(H)] for H ~ N(0, sigma2) by Gauss-Hermite quadrature. The node
/// count doubles through 32, 64, 128, 256 until two successive
/// estimates agree within tol relative; throws ConvergenceError with
/// the last two estimates otherwise.
double gauss_expectation(const std::function<double(double)>& f, double sigma2,
                         double tol = 1e-9);

/// log E[exp(log_f(H))] for H ~ N(0, sigma2), same node schedule.
/// Log-sum-exp over the nodes, so integrands may underflow the linear
/// domain by hundreds of nats. Convergence is |log diff| < tol, the
/// log-domain equivalent of the relative criterion above.
double gauss_log_expectation(const std::function<double(double)>& log_f,
                             double sigma2, double tol = 1e-9);

/// Adaptive Simpson integral of f over [a, b] to absolute tolerance tol.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-10);

/// E[f(H)] for H ~ N(0, sigma2) when f has an even feature of width
/// origin_scale at the origin that is much narrower than sqrt(sigma2)
/// (the noncoherent per-symbol integrands at high SNR). Substitutes
/// h = w sinh(t) so the feature and the Gaussian share one scale, then
/// applies the trapezoid rule with node doubling until two successive
/// estimates agree within tol relative. cover_radius widens the
/// integration window beyond the default 30 standard deviations when
/// the integrand peaks far out.
double gauss_expectation_peaked(const std::function<double(double)>& f, double sigma2,
                                double origin_scale, double cover_radius = 0.0,
                                double tol = 1e-9);

/// log E[exp(log_f(H))], same rule in the log domain.
double gauss_log_expectation_peaked(const std::function<double(double)>& log_f, double sigma2,
                                    double origin_scale, double cover_radius = 0.0,
                                    double tol = 1e-9);

}  // namespace vlsf
