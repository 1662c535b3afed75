#include "vlsf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "vlsf/ar1.hpp"
#include "vlsf/csv.hpp"
#include "vlsf/errors.hpp"
#include "vlsf/quadrature.hpp"
#include "vlsf/rng.hpp"

namespace vlsf {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr std::size_t kShards = 16;  // fixed so results never depend on hardware

double log_gauss_pdf(double y, double variance) {
  return -0.5 * (kLog2Pi + std::log(variance)) - y * y / (2.0 * variance);
}

std::vector<std::size_t> shard_sizes(std::size_t samples) {
  std::vector<std::size_t> sizes(kShards, samples / kShards);
  for (std::size_t i = 0; i < samples % kShards; ++i) ++sizes[i];
  return sizes;
}

// Log-domain accumulator for means of exp(a_i): tracks the running peak
// and first two rescaled moments, so shard results merge exactly.
struct LogMeanAccumulator {
  double peak = -std::numeric_limits<double>::infinity();
  double sum1 = 0.0;  // sum exp(a - peak)
  double sum2 = 0.0;  // sum exp(2(a - peak))
  std::size_t count = 0;

  void add(double a) {
    if (a > peak) {
      if (count > 0) {
        const double rescale = std::exp(peak - a);
        sum1 *= rescale;
        sum2 *= rescale * rescale;
      }
      peak = a;
    }
    const double w = std::exp(a - peak);
    sum1 += w;
    sum2 += w * w;
    ++count;
  }

  void merge(const LogMeanAccumulator& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double new_peak = std::max(peak, other.peak);
    const double scale_self = std::exp(peak - new_peak);
    const double scale_other = std::exp(other.peak - new_peak);
    sum1 = sum1 * scale_self + other.sum1 * scale_other;
    sum2 = sum2 * scale_self * scale_self + other.sum2 * scale_other * scale_other;
    peak = new_peak;
    count += other.count;
  }

  double log_mean() const { return peak + std::log(sum1 / static_cast<double>(count)); }

  // Delta-method standard error of log_mean.
  double log_std_error() const {
    const double n = static_cast<double>(count);
    const double mean_w = sum1 / n;
    const double var_w = std::max(0.0, (sum2 - sum1 * sum1 / n) / (n - 1.0));
    return std::sqrt(var_w / n) / mean_w;
  }

  double effective_samples() const { return sum1 * sum1 / sum2; }
};

double log_likelihood_ratio(std::span<const double> h, double rho, double sigma_h2,
                            double logdet_p) {
  const double n = static_cast<double>(h.size());
  double norm2 = 0.0;
  for (double hk : h) norm2 += hk * hk;
  const double log_p = -0.5 * logdet_p - 0.5 * ar1_precision_quadform(rho, h);
  const double log_q = -0.5 * n * std::log(sigma_h2) - norm2 / (2.0 * sigma_h2);
  return log_p - log_q;
}

void check_renyi_feasible(std::size_t n, double rho, double sigma_h2, double r) {
  for (double lambda : ar1_eigenvalues(n, rho)) {
    if (!(r * sigma_h2 / lambda - (r - 1.0) > 0.0)) {
      throw FeasibilityError(r, sigma_h2, lambda);
    }
  }
}

}  // namespace

void write_mc_estimate_csv(const McEstimate& estimate, std::ostream& os) {
  os << "value,std_error,samples,seed\n";
  os << csv_double(estimate.value) << ',' << csv_double(estimate.std_error) << ','
     << estimate.sample_count << ',' << estimate.seed << '\n';
}

McEstimate mc_log_output_density(std::span<const double> y, const ChannelParams& channel,
                                 std::size_t samples, std::uint64_t seed) {
  const std::size_t n = y.size();
  if (n < 1 || n > 12) {
    throw std::domain_error("mc_log_output_density: n must lie in [1, 12]");
  }
  if (samples < 10000) {
    throw std::domain_error("mc_log_output_density: at least 1e4 samples required");
  }

  LogMeanAccumulator total;
  const auto sizes = shard_sizes(samples);
  for (std::size_t shard = 0; shard < kShards; ++shard) {
    LogMeanAccumulator partial;
    Rng rng(derive_seed(seed, shard));
    const double innovation_sd = std::sqrt(1.0 - channel.rho * channel.rho);
    for (std::size_t i = 0; i < sizes[shard]; ++i) {
      double state = rng.normal();
      double log_weight = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        state = channel.rho * state + innovation_sd * rng.normal();
        log_weight += log_gauss_pdf(y[k], channel.sigma_z2 + channel.p0 * state * state);
      }
      partial.add(log_weight);
    }
    total.merge(partial);
  }

  McEstimate estimate;
  estimate.value = total.log_mean();
  estimate.std_error = total.log_std_error();
  estimate.sample_count = samples;
  estimate.seed = seed;
  if (total.effective_samples() < 100.0) {
    estimate.warning = "effective sample size below 100; estimate unreliable";
  }
  return estimate;
}

double iid_exact_info_density(std::span<const double> x, std::span<const double> y,
                              const ChannelParams& channel, double tol) {
  if (channel.rho != 0.0) {
    throw std::domain_error("iid_exact_info_density: requires rho = 0");
  }
  if (x.size() != y.size()) throw std::domain_error("iid_exact_info_density: length mismatch");
  if (x.empty()) throw std::domain_error("iid_exact_info_density: empty input");

  double total = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double log_cond = log_gauss_pdf(y[k], channel.sigma_z2 + x[k] * x[k]);
    double log_marginal;
    if (channel.p0 == 0.0) {
      log_marginal = log_gauss_pdf(y[k], channel.sigma_z2);
    } else {
      const double yk = y[k];
      log_marginal = gauss_log_expectation_peaked(
          [&](double h) { return log_gauss_pdf(yk, channel.sigma_z2 + channel.p0 * h * h); },
          1.0, std::sqrt(channel.sigma_z2 / channel.p0),
          3.0 * std::sqrt(std::abs(yk) / std::sqrt(channel.p0)), tol);
    }
    total += log_cond - log_marginal;
  }
  return total;
}

McEstimate mc_renyi_moment(std::size_t n, double rho, double sigma_h2, double r,
                           std::size_t samples, std::uint64_t seed) {
  if (n < 1 || n > 8) throw std::domain_error("mc_renyi_moment: n must lie in [1, 8]");
  if (samples < 2) throw std::domain_error("mc_renyi_moment: need at least 2 samples");
  check_renyi_feasible(n, rho, sigma_h2, r);

  const double logdet_p = ar1_logdet(n, rho);
  const double ref_sd = std::sqrt(sigma_h2);
  LogMeanAccumulator total;
  std::vector<double> shard_top;  // per-shard top weights, for the tail check
  const auto sizes = shard_sizes(samples);
  std::vector<double> buffer;
  std::vector<double> h(n);
  for (std::size_t shard = 0; shard < kShards; ++shard) {
    LogMeanAccumulator partial;
    buffer.clear();
    Rng rng(derive_seed(seed, shard));
    for (std::size_t i = 0; i < sizes[shard]; ++i) {
      for (std::size_t k = 0; k < n; ++k) h[k] = ref_sd * rng.normal();
      const double a = r * log_likelihood_ratio(h, rho, sigma_h2, logdet_p);
      partial.add(a);
      buffer.push_back(a);
    }
    const std::size_t keep = std::min(buffer.size(), (buffer.size() + 999) / 1000);
    std::nth_element(buffer.begin(), buffer.begin() + keep, buffer.end(), std::greater<>());
    shard_top.insert(shard_top.end(), buffer.begin(), buffer.begin() + keep);
    total.merge(partial);
  }

  McEstimate estimate;
  estimate.value = std::exp(total.log_mean());
  estimate.std_error = estimate.value * total.log_std_error();
  estimate.sample_count = samples;
  estimate.seed = seed;

  // Mass carried by the heaviest 0.1% of samples.
  const std::size_t top_count = (samples + 999) / 1000;
  if (shard_top.size() >= top_count) {
    std::nth_element(shard_top.begin(), shard_top.begin() + top_count, shard_top.end(),
                     std::greater<>());
    double top_mass = 0.0;
    for (std::size_t i = 0; i < top_count; ++i) top_mass += std::exp(shard_top[i] - total.peak);
    if (top_mass > 0.5 * total.sum1) {
      estimate.warning = "top 0.1% of samples carry over half the mass; heavy-tailed weights";
    }
  }
  return estimate;
}

McEstimate mc_kl_divergence(std::size_t n, double rho, double sigma_h2, std::size_t samples,
                            std::uint64_t seed) {
  if (n < 1) throw std::domain_error("mc_kl_divergence: n must be positive");
  if (samples < 2) throw std::domain_error("mc_kl_divergence: need at least 2 samples");
  detail::check_rho(rho);
  if (!(sigma_h2 > 0.0)) throw std::domain_error("mc_kl_divergence: sigma_h2 must be positive");

  const double logdet_p = ar1_logdet(n, rho);
  const double innovation_sd = std::sqrt(1.0 - rho * rho);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> h(n);
  const auto sizes = shard_sizes(samples);
  for (std::size_t shard = 0; shard < kShards; ++shard) {
    Rng rng(derive_seed(seed, shard));
    double part = 0.0;
    double part_sq = 0.0;
    for (std::size_t i = 0; i < sizes[shard]; ++i) {
      double state = rng.normal();
      for (std::size_t k = 0; k < n; ++k) {
        state = rho * state + innovation_sd * rng.normal();
        h[k] = state;
      }
      const double value = log_likelihood_ratio(h, rho, sigma_h2, logdet_p);
      part += value;
      part_sq += value * value;
    }
    sum += part;
    sum_sq += part_sq;
  }

  const double count = static_cast<double>(samples);
  const double mean = sum / count;
  const double variance = std::max(0.0, (sum_sq - sum * sum / count) / (count - 1.0));
  McEstimate estimate;
  estimate.value = mean;
  estimate.std_error = std::sqrt(variance / count);
  estimate.sample_count = samples;
  estimate.seed = seed;
  return estimate;
}

}  // namespace vlsf
