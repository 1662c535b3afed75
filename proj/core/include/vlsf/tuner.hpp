#pragma once

#include <cstdint>
#include <vector>

#include "vlsf/channel.hpp"

namespace vlsf {

enum class TuneObjective {
  MeanBoundAtN,      // average certified lower bound at prefix n_eval
  MeanCrossingTime,  // negative mean stopping time of a small campaign
};

/// Exhaustive search grid over the free parameters (r, sigma_h2).
/// Infeasible pairs are recorded, never scored. All grid points are
/// evaluated on common random numbers so score differences reflect the
/// parameters only.
struct TuneGrid {
  std::vector<double> r_values;         // ascending, > 1
  std::vector<double> sigma_h2_values;  // ascending, > 0
  TuneObjective objective = TuneObjective::MeanBoundAtN;
  std::size_t n_eval = 50;
  std::size_t trace_count = 200;
  std::uint64_t master_seed = 0;

  // Campaign shape for the MeanCrossingTime objective; trials equals
  // trace_count and truncated trials are charged the full horizon.
  std::size_t m_count = 16;
  double epsilon = 0.05;
};

struct GridPoint {
  double r = 0.0;
  double sigma_h2 = 0.0;
  bool feasible = false;
  double score = 0.0;     // NaN when infeasible
  double mean_psi = 0.0;  // mean lower bound at n_eval, NaN when infeasible
  double mean_phi = 0.0;  // mean upper bound at n_eval
};

/// Scores every feasible (r, sigma_h2) pair and returns the full table:
/// feasible points sorted by descending score, infeasible points after.
/// Throws FeasibilityError when no pair is feasible, naming the
/// tightest constraint in the grid.
std::vector<GridPoint> grid_search(const TuneGrid& grid, const ChannelParams& channel);

/// Paper-regime default: 12 log-spaced r values in [1.1, 8] and 16
/// sigma_h2 values linearly spaced between 1.05x and 4x the feasibility
/// floor of the largest r.
TuneGrid default_tune_grid(const ChannelParams& channel, std::size_t n_eval,
                           std::size_t trace_count, std::uint64_t master_seed);

}  // namespace vlsf
