#include "vlsf/bounds.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "vlsf/ar1.hpp"
#include "vlsf/csv.hpp"
#include "vlsf/errors.hpp"
#include "vlsf/quadrature.hpp"
#include "vlsf/seq_cholesky.hpp"

namespace vlsf {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

double log_gauss_pdf(double y, double variance) {
  return -0.5 * (kLog2Pi + std::log(variance)) - y * y / (2.0 * variance);
}

// Per-eigenvalue contribution to log E_Q[L^r].
double renyi_eigen_term(double lambda, double sigma_h2, double r) {
  const double argument = r * sigma_h2 / lambda - (r - 1.0);
  if (!(argument > 0.0)) throw FeasibilityError(r, sigma_h2, lambda);
  return 0.5 * r * std::log(sigma_h2 / lambda) - 0.5 * std::log(argument);
}

struct MomentKey {
  std::size_t n;
  double rho;
  double sigma_h2;
  double r;
  bool operator==(const MomentKey&) const = default;
};

struct MomentKeyHash {
  std::size_t operator()(const MomentKey& key) const {
    std::size_t seed = std::hash<std::size_t>{}(key.n);
    for (double v : {key.rho, key.sigma_h2, key.r}) {
      seed ^= std::hash<double>{}(v) + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
    }
    return seed;
  }
};

// Trace-independent, so campaigns share one global memo. Insert-if-absent
// under an exclusive lock; reads take the shared lock.
class MomentCache {
 public:
  double get_or_compute(std::size_t n, double rho, double sigma_h2, double r) {
    const MomentKey key{n, rho, sigma_h2, r};
    {
      std::shared_lock lock(mutex_);
      const auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    const double value = compute(n, rho, sigma_h2, r);
    std::unique_lock lock(mutex_);
    return map_.try_emplace(key, value).first->second;
  }

 private:
  static double compute(std::size_t n, double rho, double sigma_h2, double r) {
    double sum = 0.0;
    for (double lambda : ar1_eigenvalues(n, rho)) {
      sum += renyi_eigen_term(lambda, sigma_h2, r);
    }
    return sum;
  }

  std::shared_mutex mutex_;
  std::unordered_map<MomentKey, double, MomentKeyHash> map_;
};

MomentCache& moment_cache() {
  static MomentCache cache;
  return cache;
}

void check_reference_inputs(double rho, double sigma_h2, double r) {
  detail::check_rho(rho);
  if (!(sigma_h2 > 0.0)) throw std::domain_error("sigma_h2 must be positive");
  if (!(r > 1.0)) throw std::domain_error("Holder order r must exceed 1");
}

double signal_feature_scale(const ChannelParams& channel) {
  return std::sqrt(channel.sigma_z2 / channel.p0);
}

// Reach of the exp(-s y^2 / (2 v(h))) peak: v at the maximizing h is
// |y| sigma_h sqrt(s p0), so h^2 stays below |y| sigma_h sqrt(s / p0).
double envelope_cover_radius(double y, double s, double sigma_h2, double p0) {
  const double h_star2 = std::abs(y) * std::sqrt(s * sigma_h2 / p0);
  return 3.0 * std::sqrt(h_star2);
}

}  // namespace

double feasibility_floor(double r, double rho) {
  return (r - 1.0) / r * (1.0 + rho) / (1.0 - rho);
}

bool is_feasible(double r, double sigma_h2, double rho) {
  return sigma_h2 > feasibility_floor(r, rho);
}

ReferenceParams::ReferenceParams(double r, double sigma_h2, double rho)
    : r(r), s(r / (r - 1.0)), sigma_h2(sigma_h2), rho(rho) {
  check_reference_inputs(rho, sigma_h2, r);
  if (!is_feasible(r, sigma_h2, rho)) {
    throw FeasibilityError(r, sigma_h2, rho, feasibility_floor(r, rho));
  }
}

double renyi_log_moment(std::size_t n, double rho, double sigma_h2, double r) {
  if (n < 1) throw std::domain_error("renyi_log_moment: n must be positive");
  check_reference_inputs(rho, sigma_h2, r);
  return moment_cache().get_or_compute(n, rho, sigma_h2, r);
}

double renyi_penalty(std::size_t n, double rho, double sigma_h2, double r) {
  return renyi_log_moment(n, rho, sigma_h2, r) / r;
}

double szego_rate(double rho, double sigma_h2, double r) {
  check_reference_inputs(rho, sigma_h2, r);
  if (!is_feasible(r, sigma_h2, rho)) {
    throw FeasibilityError(r, sigma_h2, rho, feasibility_floor(r, rho));
  }
  auto integrand = [&](double omega) {
    const double spectrum =
        (1.0 - rho * rho) / (1.0 + rho * rho - 2.0 * rho * std::cos(omega));
    return renyi_eigen_term(spectrum, sigma_h2, r);
  };
  // Even in omega: average over [-pi, pi] is (1/pi) * integral over [0, pi].
  return integrate_adaptive(integrand, 0.0, std::numbers::pi, 1e-11) / std::numbers::pi;
}

double szego_rate_printed_form(double rho, double sigma_h2, double r) {
  check_reference_inputs(rho, sigma_h2, r);
  if (!is_feasible(r, sigma_h2, rho)) {
    throw FeasibilityError(r, sigma_h2, rho, feasibility_floor(r, rho));
  }
  auto integrand = [&](double omega) {
    const double spectrum =
        (1.0 - rho * rho) / (1.0 + rho * rho - 2.0 * rho * std::cos(omega));
    return 0.5 * std::log(r * sigma_h2 * spectrum /
                          (r * sigma_h2 - (r - 1.0) * spectrum));
  };
  return integrate_adaptive(integrand, 0.0, std::numbers::pi, 1e-11) / std::numbers::pi;
}

double kl_penalty(std::size_t n, double rho, double sigma_h2) {
  if (n < 1) throw std::domain_error("kl_penalty: n must be positive");
  detail::check_rho(rho);
  if (!(sigma_h2 > 0.0)) throw std::domain_error("kl_penalty: sigma_h2 must be positive");
  const double dn = static_cast<double>(n);
  // tr(Sigma) = n because the fading is unit-variance.
  return 0.5 * (dn / sigma_h2 - dn + dn * std::log(sigma_h2) - ar1_logdet(n, rho));
}

double holder_envelope_term(double y_k, const ReferenceParams& params,
                            const ChannelParams& channel) {
  if (channel.p0 == 0.0) {
    // v(h) collapses to the noise variance and the reference integral
    // is a normalization: the term is s * log phi_{sigma_z2}(y_k).
    return params.s * log_gauss_pdf(y_k, channel.sigma_z2);
  }
  auto log_integrand = [&](double h) {
    return params.s * log_gauss_pdf(y_k, channel.sigma_z2 + channel.p0 * h * h);
  };
  return gauss_log_expectation_peaked(
      log_integrand, params.sigma_h2, signal_feature_scale(channel),
      envelope_cover_radius(y_k, params.s, params.sigma_h2, channel.p0));
}

std::vector<double> holder_envelope_log(std::span<const double> y, const ReferenceParams& params,
                                        const ChannelParams& channel) {
  if (y.empty()) throw std::domain_error("holder_envelope_log: empty output sequence");
  std::vector<double> out;
  out.reserve(y.size());
  double running = 0.0;
  for (double yk : y) {
    running += holder_envelope_term(yk, params, channel);
    out.push_back(running);
  }
  return out;
}

std::vector<double> jensen_envelope_log(std::span<const double> y, double sigma_h2,
                                        const ChannelParams& channel) {
  if (y.empty()) throw std::domain_error("jensen_envelope_log: empty output sequence");
  if (!(sigma_h2 > 0.0)) throw std::domain_error("jensen_envelope_log: sigma_h2 must be positive");
  std::vector<double> out;
  out.reserve(y.size());
  double running = 0.0;
  for (double yk : y) {
    double term;
    if (channel.p0 == 0.0) {
      term = log_gauss_pdf(yk, channel.sigma_z2);
    } else {
      auto integrand = [&](double h) {
        return log_gauss_pdf(yk, channel.sigma_z2 + channel.p0 * h * h);
      };
      term = gauss_expectation_peaked(integrand, sigma_h2, signal_feature_scale(channel));
    }
    running += term;
    out.push_back(running);
  }
  return out;
}

BoundTrajectory lower_bound_trajectory(std::span<const double> x, std::span<const double> y,
                                       const ReferenceParams& params,
                                       const ChannelParams& channel) {
  if (x.size() != y.size()) throw std::domain_error("lower_bound_trajectory: length mismatch");
  if (params.rho != channel.rho) {
    throw std::domain_error(
        "lower_bound_trajectory: reference params were validated against a different rho");
  }
  const std::size_t n_total = x.size();
  BoundTrajectory trajectory;
  trajectory.kind = BoundKind::Lower;
  trajectory.log_cond = seq_gaussian_logpdf(x, y, channel.rho, channel.sigma_z2);
  const std::vector<double> holder = holder_envelope_log(y, params, channel);
  trajectory.n_values.resize(n_total);
  trajectory.envelope.resize(n_total);
  trajectory.penalty.resize(n_total);
  trajectory.value.resize(n_total);
  for (std::size_t i = 0; i < n_total; ++i) {
    trajectory.n_values[i] = i + 1;
    trajectory.envelope[i] = holder[i] / params.s;
    trajectory.penalty[i] = renyi_penalty(i + 1, channel.rho, params.sigma_h2, params.r);
    trajectory.value[i] = trajectory.log_cond[i] - trajectory.envelope[i] - trajectory.penalty[i];
  }
  return trajectory;
}

BoundTrajectory upper_bound_trajectory(std::span<const double> x, std::span<const double> y,
                                       double sigma_h2, const ChannelParams& channel) {
  if (x.size() != y.size()) throw std::domain_error("upper_bound_trajectory: length mismatch");
  const std::size_t n_total = x.size();
  BoundTrajectory trajectory;
  trajectory.kind = BoundKind::Upper;
  trajectory.log_cond = seq_gaussian_logpdf(x, y, channel.rho, channel.sigma_z2);
  trajectory.envelope = jensen_envelope_log(y, sigma_h2, channel);
  trajectory.n_values.resize(n_total);
  trajectory.penalty.resize(n_total);
  trajectory.value.resize(n_total);
  for (std::size_t i = 0; i < n_total; ++i) {
    trajectory.n_values[i] = i + 1;
    trajectory.penalty[i] = kl_penalty(i + 1, channel.rho, sigma_h2);
    trajectory.value[i] = trajectory.log_cond[i] + trajectory.penalty[i] - trajectory.envelope[i];
  }
  return trajectory;
}

void write_trajectory_csv(const BoundTrajectory& trajectory, std::ostream& os) {
  os << "n,log_cond,envelope,penalty,value,kind\n";
  const char* kind = trajectory.kind == BoundKind::Lower ? "lower" : "upper";
  for (std::size_t i = 0; i < trajectory.n_values.size(); ++i) {
    os << trajectory.n_values[i] << ',' << csv_double(trajectory.log_cond[i]) << ','
       << csv_double(trajectory.envelope[i]) << ',' << csv_double(trajectory.penalty[i]) << ','
       << csv_double(trajectory.value[i]) << ',' << kind << '\n';
  }
}

std::vector<double> renyi_penalty_schedule(std::size_t n_max, double rho, double sigma_h2,
                                           double r) {
  if (n_max < 1) throw std::domain_error("renyi_penalty_schedule: n_max must be positive");
  std::vector<double> out(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out[n - 1] = renyi_penalty(n, rho, sigma_h2, r);
  return out;
}

std::vector<double> kl_penalty_schedule(std::size_t n_max, double rho, double sigma_h2) {
  if (n_max < 1) throw std::domain_error("kl_penalty_schedule: n_max must be positive");
  std::vector<double> out(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out[n - 1] = kl_penalty(n, rho, sigma_h2);
  return out;
}

}  // namespace vlsf
