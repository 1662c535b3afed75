#include "vlsf/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vlsf/bounds.hpp"
#include "vlsf/decoder.hpp"
#include "vlsf/errors.hpp"
#include "vlsf/parallel.hpp"
#include "vlsf/rng.hpp"
#include "vlsf/seq_cholesky.hpp"

namespace vlsf {

namespace {

double mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

std::vector<GridPoint> grid_search(const TuneGrid& grid, const ChannelParams& channel) {
  if (grid.r_values.empty() || grid.sigma_h2_values.empty()) {
    throw std::domain_error("grid_search: empty grid");
  }
  if (grid.n_eval < 1) throw std::domain_error("grid_search: n_eval must be positive");
  if (grid.trace_count < 1) throw std::domain_error("grid_search: trace_count must be positive");
  for (double r : grid.r_values) {
    if (!(r > 1.0)) throw std::domain_error("grid_search: r values must exceed 1");
  }
  for (double s2 : grid.sigma_h2_values) {
    if (!(s2 > 0.0)) throw std::domain_error("grid_search: sigma_h2 values must be positive");
  }

  bool any_feasible = false;
  for (double r : grid.r_values) {
    for (double s2 : grid.sigma_h2_values) {
      if (is_feasible(r, s2, channel.rho)) any_feasible = true;
    }
  }
  if (!any_feasible) {
    // The loosest floor in the grid is the tightest obstruction to report.
    const double r_min = grid.r_values.front();
    throw FeasibilityError(r_min, grid.sigma_h2_values.back(), channel.rho,
                           feasibility_floor(r_min, channel.rho));
  }

  // Common random numbers: every grid point sees the same traces.
  std::vector<Trace> traces(grid.trace_count);
  std::vector<double> log_cond(grid.trace_count);
  for (std::size_t t = 0; t < grid.trace_count; ++t) {
    traces[t] = make_trace(grid.n_eval, channel, derive_seed(grid.master_seed, t));
    log_cond[t] = seq_gaussian_logpdf(traces[t].x, traces[t].y, channel.rho,
                                      channel.sigma_z2).back();
  }
  const double mean_log_cond = mean(log_cond);

  // The upper bound depends on sigma_h2 only; score it once per column.
  std::vector<double> mean_phi_by_sigma(grid.sigma_h2_values.size());
  parallel_for(grid.sigma_h2_values.size(), [&](std::size_t j) {
    const double sigma_h2 = grid.sigma_h2_values[j];
    std::vector<double> phis(grid.trace_count);
    for (std::size_t t = 0; t < grid.trace_count; ++t) {
      const double jensen = jensen_envelope_log(traces[t].y, sigma_h2, channel).back();
      phis[t] = log_cond[t] + kl_penalty(grid.n_eval, channel.rho, sigma_h2) - jensen;
    }
    mean_phi_by_sigma[j] = mean(phis);
  });

  const std::size_t point_count = grid.r_values.size() * grid.sigma_h2_values.size();
  std::vector<GridPoint> points(point_count);
  parallel_for(point_count, [&](std::size_t index) {
    const std::size_t i = index / grid.sigma_h2_values.size();
    const std::size_t j = index % grid.sigma_h2_values.size();
    GridPoint& point = points[index];
    point.r = grid.r_values[i];
    point.sigma_h2 = grid.sigma_h2_values[j];
    point.mean_phi = mean_phi_by_sigma[j];
    point.feasible = is_feasible(point.r, point.sigma_h2, channel.rho);
    if (!point.feasible) {
      point.score = std::numeric_limits<double>::quiet_NaN();
      point.mean_psi = std::numeric_limits<double>::quiet_NaN();
      return;
    }

    const ReferenceParams reference(point.r, point.sigma_h2, channel.rho);
    const double penalty = renyi_penalty(grid.n_eval, channel.rho, point.sigma_h2, point.r);
    double holder_sum = 0.0;
    for (std::size_t t = 0; t < grid.trace_count; ++t) {
      holder_sum += holder_envelope_log(traces[t].y, reference, channel).back();
    }
    point.mean_psi =
        mean_log_cond - holder_sum / (reference.s * static_cast<double>(grid.trace_count)) -
        penalty;

    if (grid.objective == TuneObjective::MeanBoundAtN) {
      point.score = point.mean_psi;
    } else {
      const DecoderConfig config(grid.m_count, grid.epsilon, grid.n_eval, channel, reference);
      const CampaignStats stats = run_campaign(config, grid.trace_count, grid.master_seed);
      double tau_total = 0.0;
      for (const auto& [tau, count] : stats.tau_histogram) {
        tau_total += static_cast<double>(tau) * static_cast<double>(count);
      }
      tau_total += static_cast<double>(stats.truncations) * static_cast<double>(grid.n_eval);
      point.score = -tau_total / static_cast<double>(grid.trace_count);
    }
  });

  std::sort(points.begin(), points.end(), [](const GridPoint& a, const GridPoint& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (a.feasible && a.score != b.score) return a.score > b.score;
    if (a.r != b.r) return a.r < b.r;
    return a.sigma_h2 < b.sigma_h2;
  });
  return points;
}

TuneGrid default_tune_grid(const ChannelParams& channel, std::size_t n_eval,
                           std::size_t trace_count, std::uint64_t master_seed) {
  TuneGrid grid;
  grid.n_eval = n_eval;
  grid.trace_count = trace_count;
  grid.master_seed = master_seed;

  constexpr std::size_t kRCount = 12;
  constexpr std::size_t kSigmaCount = 16;
  const double log_r_min = std::log(1.1);
  const double log_r_max = std::log(8.0);
  for (std::size_t i = 0; i < kRCount; ++i) {
    const double f = static_cast<double>(i) / (kRCount - 1);
    grid.r_values.push_back(std::exp(log_r_min + f * (log_r_max - log_r_min)));
  }

  const double floor = feasibility_floor(grid.r_values.back(), channel.rho);
  const double lo = 1.05 * floor;
  const double hi = 4.0 * floor;
  for (std::size_t j = 0; j < kSigmaCount; ++j) {
    const double f = static_cast<double>(j) / (kSigmaCount - 1);
    grid.sigma_h2_values.push_back(lo + f * (hi - lo));
  }
  return grid;
}

}  // namespace vlsf
