#include "vlsf/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vlsf/errors.hpp"

namespace vlsf {

namespace {

constexpr std::array<int, 4> kNodeSchedule = {32, 64, 128, 256};

struct HermiteRule {
  std::vector<double> nodes;    // physicists' convention, weight e^{-t^2}
  std::vector<double> weights;  // normalized to sum to 1
};

// Golub-Welsch on the Hermite Jacobi matrix; off-diagonals sqrt(k/2).
HermiteRule build_rule(int order) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd subdiag(order - 1);
  for (int k = 1; k < order; ++k) subdiag(k - 1) = std::sqrt(0.5 * k);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_expectation: Hermite rule construction failed");
  }

  HermiteRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double q = solver.eigenvectors()(0, i);
    rule.weights[i] = q * q;  // mu_0 = sqrt(pi) cancels after normalization
  }
  return rule;
}

const HermiteRule& rule_for(int order) {
  static std::array<HermiteRule, kNodeSchedule.size()> rules;
  static std::once_flag once;
  std::call_once(once, [] {
    for (std::size_t i = 0; i < kNodeSchedule.size(); ++i) rules[i] = build_rule(kNodeSchedule[i]);
  });
  for (std::size_t i = 0; i < kNodeSchedule.size(); ++i) {
    if (kNodeSchedule[i] == order) return rules[i];
  }
  throw std::logic_error("rule_for: order outside the node schedule");
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

double gauss_expectation(const std::function<double(double)>& f, double sigma2, double tol) {
  if (!(sigma2 > 0.0)) throw std::domain_error("gauss_expectation: sigma2 must be positive");
  if (!(tol > 0.0)) throw std::domain_error("gauss_expectation: tol must be positive");

  const double scale = std::sqrt(2.0 * sigma2);
  double previous = std::numeric_limits<double>::quiet_NaN();
  double estimate = std::numeric_limits<double>::quiet_NaN();
  for (int order : kNodeSchedule) {
    const HermiteRule& rule = rule_for(order);
    double sum = 0.0;
    for (int i = 0; i < order; ++i) sum += rule.weights[i] * f(scale * rule.nodes[i]);
    previous = estimate;
    estimate = sum;
    if (!std::isnan(previous) && close_rel(previous, estimate, tol)) return estimate;
  }
  throw ConvergenceError("gauss_expectation: node budget exhausted", previous, estimate);
}

double gauss_log_expectation(const std::function<double(double)>& log_f, double sigma2,
                             double tol) {
  if (!(sigma2 > 0.0)) throw std::domain_error("gauss_log_expectation: sigma2 must be positive");
  if (!(tol > 0.0)) throw std::domain_error("gauss_log_expectation: tol must be positive");

  const double scale = std::sqrt(2.0 * sigma2);
  auto evaluate = [&](int order) {
    const HermiteRule& rule = rule_for(order);
    std::vector<double> terms(order);
    double peak = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < order; ++i) {
      terms[i] = std::log(rule.weights[i]) + log_f(scale * rule.nodes[i]);
      peak = std::max(peak, terms[i]);
    }
    if (!std::isfinite(peak)) return peak;  // identically-zero integrand
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - peak);
    return peak + std::log(sum);
  };

  double previous = std::numeric_limits<double>::quiet_NaN();
  double estimate = std::numeric_limits<double>::quiet_NaN();
  for (int order : kNodeSchedule) {
    previous = estimate;
    estimate = evaluate(order);
    // |log a - log b| < tol is the log-domain form of relative closeness.
    if (!std::isnan(previous) && std::abs(previous - estimate) <= tol) return estimate;
  }
  throw ConvergenceError("gauss_log_expectation: node budget exhausted", previous, estimate);
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) {
    throw ConvergenceError("integrate_adaptive: recursion depth exhausted", whole, left + right);
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("integrate_adaptive: tol must be positive");
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

namespace {

constexpr int kTrapezoidStart = 64;  // intervals; node counts are 2^k + 1
constexpr int kTrapezoidMax = 2048;
constexpr double kLog2Pi = 1.8378770664093454836;

struct SinhGrid {
  double half_range;    // T: t spans [-T, T]
  double origin_scale;  // w in h = w sinh(t)
};

SinhGrid make_grid(double sigma2, double origin_scale, double cover_radius) {
  const double sigma = std::sqrt(sigma2);
  // Never let the substitution stretch past the Gaussian's own scale.
  const double w = std::clamp(origin_scale, 1e-12 * sigma, sigma);
  const double reach = std::max(30.0 * sigma, cover_radius);
  return {std::asinh(reach / w), w};
}

}  // namespace

double gauss_expectation_peaked(const std::function<double(double)>& f, double sigma2,
                                double origin_scale, double cover_radius, double tol) {
  if (!(sigma2 > 0.0)) throw std::domain_error("gauss_expectation_peaked: sigma2 must be positive");
  if (!(origin_scale > 0.0)) {
    throw std::domain_error("gauss_expectation_peaked: origin_scale must be positive");
  }
  if (!(tol > 0.0)) throw std::domain_error("gauss_expectation_peaked: tol must be positive");

  const SinhGrid grid = make_grid(sigma2, origin_scale, cover_radius);
  const double log_norm = -0.5 * (kLog2Pi + std::log(sigma2));
  auto evaluate = [&](int intervals) {
    const double step = 2.0 * grid.half_range / intervals;
    double sum = 0.0;
    for (int j = 0; j <= intervals; ++j) {
      const double t = -grid.half_range + j * step;
      const double h = grid.origin_scale * std::sinh(t);
      const double weight =
          std::exp(log_norm - 0.5 * h * h / sigma2) * grid.origin_scale * std::cosh(t);
      const double end_factor = (j == 0 || j == intervals) ? 0.5 : 1.0;
      sum += end_factor * weight * f(h);
    }
    return sum * step;
  };

  double previous = std::numeric_limits<double>::quiet_NaN();
  double estimate = std::numeric_limits<double>::quiet_NaN();
  for (int intervals = kTrapezoidStart; intervals <= kTrapezoidMax; intervals *= 2) {
    previous = estimate;
    estimate = evaluate(intervals);
    if (!std::isnan(previous) && close_rel(previous, estimate, tol)) return estimate;
  }
  throw ConvergenceError("gauss_expectation_peaked: node budget exhausted", previous, estimate);
}

double gauss_log_expectation_peaked(const std::function<double(double)>& log_f, double sigma2,
                                    double origin_scale, double cover_radius, double tol) {
  if (!(sigma2 > 0.0)) {
    throw std::domain_error("gauss_log_expectation_peaked: sigma2 must be positive");
  }
  if (!(origin_scale > 0.0)) {
    throw std::domain_error("gauss_log_expectation_peaked: origin_scale must be positive");
  }
  if (!(tol > 0.0)) throw std::domain_error("gauss_log_expectation_peaked: tol must be positive");

  const SinhGrid grid = make_grid(sigma2, origin_scale, cover_radius);
  const double log_norm = -0.5 * (kLog2Pi + std::log(sigma2));
  auto evaluate = [&](int intervals) {
    const double step = 2.0 * grid.half_range / intervals;
    const double log_step = std::log(step);
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(intervals + 1);
    for (int j = 0; j <= intervals; ++j) {
      const double t = -grid.half_range + j * step;
      const double h = grid.origin_scale * std::sinh(t);
      double term = log_f(h) + log_norm - 0.5 * h * h / sigma2 +
                    std::log(grid.origin_scale * std::cosh(t)) + log_step;
      if (j == 0 || j == intervals) term -= std::numbers::ln2;
      terms[j] = term;
      peak = std::max(peak, term);
    }
    if (!std::isfinite(peak)) return peak;
    double sum = 0.0;
    for (double term : terms) sum += std::exp(term - peak);
    return peak + std::log(sum);
  };

  double previous = std::numeric_limits<double>::quiet_NaN();
  double estimate = std::numeric_limits<double>::quiet_NaN();
  for (int intervals = kTrapezoidStart; intervals <= kTrapezoidMax; intervals *= 2) {
    previous = estimate;
    estimate = evaluate(intervals);
    if (!std::isnan(previous) && std::abs(previous - estimate) <= tol) return estimate;
  }
  throw ConvergenceError("gauss_log_expectation_peaked: node budget exhausted", previous,
                         estimate);
}

}  // namespace vlsf
