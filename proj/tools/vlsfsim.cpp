// Batch front end: reads a flat key = value config, runs one of the
// experiment commands, and writes CSV data plus a manifest sufficient
// to reproduce the run. Logs go to stderr; data goes to files only.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vlsf/bounds.hpp"
#include "vlsf/channel.hpp"
#include "vlsf/config.hpp"
#include "vlsf/csv.hpp"
#include "vlsf/decoder.hpp"
#include "vlsf/errors.hpp"
#include "vlsf/rng.hpp"
#include "vlsf/seq_cholesky.hpp"
#include "vlsf/tuner.hpp"

namespace {

namespace fs = std::filesystem;
using vlsf::KeyValueConfig;

constexpr const char* kVersion = "0.1.0";

// Exit codes beyond the usual 0/1: keep them distinct per failure class.
constexpr int kExitConfig = 2;
constexpr int kExitFeasibility = 3;
constexpr int kExitConvergence = 4;

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  bool has_seed = false;
  std::uint64_t seed = 0;
  bool has_trials = false;
  std::uint64_t trials = 0;
  bool quiet = false;
};

std::ostream& log_stream(const CommonOptions& options) {
  static std::ofstream null_sink;
  if (options.quiet) {
    if (!null_sink.is_open()) null_sink.setstate(std::ios::badbit);
    return null_sink;
  }
  return std::cerr;
}

KeyValueConfig resolve_config(const CommonOptions& options) {
  KeyValueConfig config;
  if (!options.config_path.empty()) config = KeyValueConfig::parse_file(options.config_path);
  if (options.has_seed) config.set_u64("master_seed", options.seed);
  if (options.has_trials) config.set_u64("trials", options.trials);
  if (!options.out_dir.empty()) config.set("out_dir", options.out_dir);
  return config;
}

vlsf::ChannelParams channel_from(const KeyValueConfig& config) {
  return {config.get_double("rho"), config.get_double("sigma_z2"), config.get_double("p0")};
}

fs::path prepare_out_dir(const KeyValueConfig& config) {
  const fs::path dir = config.get_string("out_dir");
  fs::create_directories(dir);
  return dir;
}

void write_manifest(const KeyValueConfig& resolved, const std::string& command,
                    const fs::path& dir) {
  KeyValueConfig manifest = resolved;
  manifest.set("command", command);
  manifest.set("version", kVersion);
  manifest.write_file(dir / "manifest.txt");
}

std::string trajectory_file_name(const char* stem, std::size_t index) {
  char name[64];
  std::snprintf(name, sizeof(name), "%s_%04zu.csv", stem, index);
  return name;
}

std::vector<std::size_t> parse_n_list(const std::string& raw) {
  std::vector<std::size_t> values;
  std::stringstream stream(raw);
  std::string item;
  while (std::getline(stream, item, ',')) {
    values.push_back(std::stoull(item));
  }
  if (values.empty()) throw std::runtime_error("szego_n_values: empty list");
  return values;
}

vlsf::TuneGrid grid_from(const KeyValueConfig& config, const vlsf::ChannelParams& channel) {
  const std::size_t n_eval = config.get_u64_or("n_eval", 50);
  const std::size_t trace_count = config.get_u64_or("trace_count", 200);
  const std::uint64_t seed = config.get_u64_or("master_seed", 0);
  vlsf::TuneGrid grid;
  if (config.has("grid_r_min")) {
    grid = vlsf::TuneGrid{};
    grid.n_eval = n_eval;
    grid.trace_count = trace_count;
    grid.master_seed = seed;
    const double r_min = config.get_double("grid_r_min");
    const double r_max = config.get_double("grid_r_max");
    const std::size_t r_count = config.get_u64("grid_r_count");
    const double s_min = config.get_double("grid_sigma_h2_min");
    const double s_max = config.get_double("grid_sigma_h2_max");
    const std::size_t s_count = config.get_u64("grid_sigma_h2_count");
    if (r_count < 1 || s_count < 1) throw std::runtime_error("grid counts must be positive");
    for (std::size_t i = 0; i < r_count; ++i) {
      const double f = r_count == 1 ? 0.0 : static_cast<double>(i) / (r_count - 1);
      grid.r_values.push_back(std::exp(std::log(r_min) + f * (std::log(r_max) - std::log(r_min))));
    }
    for (std::size_t j = 0; j < s_count; ++j) {
      const double f = s_count == 1 ? 0.0 : static_cast<double>(j) / (s_count - 1);
      grid.sigma_h2_values.push_back(s_min + f * (s_max - s_min));
    }
  } else {
    grid = vlsf::default_tune_grid(channel, n_eval, trace_count, seed);
  }
  const std::string objective = config.get_string_or("objective", "mean_bound_at_n");
  if (objective == "mean_bound_at_n") {
    grid.objective = vlsf::TuneObjective::MeanBoundAtN;
  } else if (objective == "mean_crossing_time") {
    grid.objective = vlsf::TuneObjective::MeanCrossingTime;
  } else {
    throw std::runtime_error("objective must be mean_bound_at_n or mean_crossing_time");
  }
  grid.m_count = config.get_u64_or("m_count", 16);
  grid.epsilon = config.get_double_or("epsilon", 0.05);
  return grid;
}

int cmd_trace(const CommonOptions& options) {
  KeyValueConfig config = resolve_config(options);
  const vlsf::ChannelParams channel = channel_from(config);
  const std::size_t n = config.get_u64_or("n_max", 100);
  const std::uint64_t seed = config.get_u64_or("master_seed", 0);
  const fs::path dir = prepare_out_dir(config);

  const vlsf::Trace trace = vlsf::make_trace(n, channel, seed);
  std::ofstream out(dir / "trace.csv", std::ios::binary);
  vlsf::write_trace_csv(trace, out);
  write_manifest(config, "trace", dir);
  log_stream(options) << "trace: wrote " << n << " symbols to " << (dir / "trace.csv") << "\n";
  return 0;
}

int cmd_bounds(const CommonOptions& options) {
  KeyValueConfig config = resolve_config(options);
  const vlsf::ChannelParams channel = channel_from(config);
  const std::size_t horizon = config.get_u64_or("n_max", 50);
  const std::size_t trace_count = config.get_u64_or("trace_count", 200);
  const std::uint64_t seed = config.get_u64_or("master_seed", 0);
  const fs::path dir = prepare_out_dir(config);

  double r;
  double sigma_h2;
  if (config.has("r") && config.has("sigma_h2")) {
    r = config.get_double("r");
    sigma_h2 = config.get_double("sigma_h2");
  } else {
    // No explicit reference point: search the grid and use the maximizer.
    const vlsf::TuneGrid grid = grid_from(config, channel);
    const auto table = vlsf::grid_search(grid, channel);
    r = table.front().r;
    sigma_h2 = table.front().sigma_h2;
    config.set_double("r", r);
    config.set_double("sigma_h2", sigma_h2);
    log_stream(options) << "bounds: tuned reference params r = " << r
                        << ", sigma_h2 = " << sigma_h2 << "\n";
  }
  const vlsf::ReferenceParams reference(r, sigma_h2, channel.rho);

  std::vector<double> psi_sum(horizon, 0.0);
  std::vector<double> phi_sum(horizon, 0.0);
  for (std::size_t t = 0; t < trace_count; ++t) {
    const vlsf::Trace trace = vlsf::make_trace(horizon, channel, vlsf::derive_seed(seed, t));
    const auto lower = vlsf::lower_bound_trajectory(trace.x, trace.y, reference, channel);
    const auto upper = vlsf::upper_bound_trajectory(trace.x, trace.y, sigma_h2, channel);
    for (std::size_t i = 0; i < horizon; ++i) {
      psi_sum[i] += lower.value[i];
      phi_sum[i] += upper.value[i];
    }
    std::ofstream lower_out(dir / trajectory_file_name("trajectory_lower", t), std::ios::binary);
    vlsf::write_trajectory_csv(lower, lower_out);
    std::ofstream upper_out(dir / trajectory_file_name("trajectory_upper", t), std::ios::binary);
    vlsf::write_trajectory_csv(upper, upper_out);
  }

  vlsf::CsvFile curves(dir / "curves.csv", "n,mean_psi,mean_phi");
  for (std::size_t i = 0; i < horizon; ++i) {
    curves.row(std::to_string(i + 1) + ',' +
               vlsf::csv_double(psi_sum[i] / static_cast<double>(trace_count)) + ',' +
               vlsf::csv_double(phi_sum[i] / static_cast<double>(trace_count)));
  }
  write_manifest(config, "bounds", dir);
  log_stream(options) << "bounds: " << trace_count << " traces, horizon " << horizon << ", to "
                      << dir << "\n";
  return 0;
}

int cmd_simulate(const CommonOptions& options) {
  KeyValueConfig config = resolve_config(options);
  const vlsf::ChannelParams channel = channel_from(config);
  const vlsf::ReferenceParams reference(config.get_double("r"), config.get_double("sigma_h2"),
                                        channel.rho);
  const std::size_t m_count = config.get_u64("m_count");
  const double epsilon = config.get_double("epsilon");
  const std::size_t n_max = config.get_u64("n_max");
  const std::size_t trials = config.get_u64_or("trials", 1000);
  const std::uint64_t seed = config.get_u64_or("master_seed", 0);
  const std::size_t samples = config.get_u64_or("trajectory_samples", 4);
  const fs::path dir = prepare_out_dir(config);

  vlsf::DecoderConfig decoder =
      config.has("gamma")
          ? vlsf::DecoderConfig(m_count, epsilon, config.get_double("gamma"), n_max, channel,
                                reference)
          : vlsf::DecoderConfig(m_count, epsilon, n_max, channel, reference);
  log_stream(options) << "simulate: gamma = " << decoder.gamma << ", " << trials << " trials\n";

  const vlsf::CampaignStats stats = vlsf::run_campaign(decoder, trials, seed);

  std::ofstream hist(dir / "histogram.csv", std::ios::binary);
  vlsf::write_histogram_csv(stats, hist);
  std::ofstream summary(dir / "summary.csv", std::ios::binary);
  vlsf::write_summary_csv(stats, summary);

  // Re-decode the first few trials to capture figure trajectories;
  // determinism makes the re-run identical to the campaign's.
  for (std::size_t t = 0; t < std::min(samples, trials); ++t) {
    const std::uint64_t trial_seed = vlsf::derive_seed(seed, t);
    vlsf::Rng message_rng(vlsf::derive_seed(trial_seed, 3));
    const std::size_t message = message_rng.uniform_index(m_count);
    const vlsf::Codebook codebook(m_count, n_max, channel.p0, vlsf::derive_seed(trial_seed, 4));
    vlsf::TrialTrajectory trajectory;
    const auto record = vlsf::decode_trial(codebook, message, decoder, trial_seed, &trajectory);
    vlsf::CsvFile file(dir / trajectory_file_name("trajectory", t), "n,psi,outcome");
    for (std::size_t i = 0; i < trajectory.psi.size(); ++i) {
      file.row(std::to_string(i + 1) + ',' + vlsf::csv_double(trajectory.psi[i]) + ',' +
               vlsf::outcome_name(record.outcome));
    }
  }

  write_manifest(config, "simulate", dir);
  log_stream(options) << "simulate: errors " << stats.errors << "/" << stats.trials
                      << ", truncations " << stats.truncations << ", mean tau " << stats.mean_tau
                      << ", error CI [" << stats.error_ci.low << ", " << stats.error_ci.high
                      << "]\n";
  return 0;
}

int cmd_tune(const CommonOptions& options) {
  KeyValueConfig config = resolve_config(options);
  const vlsf::ChannelParams channel = channel_from(config);
  const vlsf::TuneGrid grid = grid_from(config, channel);
  const fs::path dir = prepare_out_dir(config);

  const auto table = vlsf::grid_search(grid, channel);

  vlsf::CsvFile csv(dir / "grid.csv", "r,sigma_h2,feasible,score,mean_psi,mean_phi");
  for (const auto& point : table) {
    csv.row(vlsf::csv_double(point.r) + ',' + vlsf::csv_double(point.sigma_h2) + ',' +
            (point.feasible ? "1" : "0") + ',' + vlsf::csv_double(point.score) + ',' +
            vlsf::csv_double(point.mean_psi) + ',' + vlsf::csv_double(point.mean_phi));
  }
  write_manifest(config, "tune", dir);
  log_stream(options) << "tune: maximizer r = " << table.front().r
                      << ", sigma_h2 = " << table.front().sigma_h2
                      << ", score = " << table.front().score << "\n";
  return 0;
}

int cmd_szego(const CommonOptions& options) {
  KeyValueConfig config = resolve_config(options);
  const vlsf::ChannelParams channel = channel_from(config);
  const double r = config.get_double("r");
  const double sigma_h2 = config.get_double("sigma_h2");
  const vlsf::ReferenceParams reference(r, sigma_h2, channel.rho);
  (void)reference;
  const auto n_values =
      parse_n_list(config.get_string_or("szego_n_values", "10,100,1000,2000"));
  const fs::path dir = prepare_out_dir(config);

  const double limit = vlsf::szego_rate(channel.rho, sigma_h2, r);
  const double printed = vlsf::szego_rate_printed_form(channel.rho, sigma_h2, r);

  vlsf::CsvFile csv(dir / "szego.csv", "n,rate,limit,limit_printed");
  for (std::size_t n : n_values) {
    const double rate = vlsf::renyi_log_moment(n, channel.rho, sigma_h2, r) /
                        static_cast<double>(n);
    csv.row(std::to_string(n) + ',' + vlsf::csv_double(rate) + ',' + vlsf::csv_double(limit) +
            ',' + vlsf::csv_double(printed));
  }
  write_manifest(config, "szego", dir);
  log_stream(options) << "szego: limit " << limit << ", printed-form value " << printed << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-density bounds and stop-feedback decoding over AR(1) fading"};
  app.require_subcommand(1);

  CommonOptions options;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", options.config_path, "flat key = value config file");
    cmd->add_option("--out", options.out_dir, "output directory (overrides out_dir)");
    cmd->add_option("--seed", options.seed, "master seed (overrides master_seed)")
        ->each([&](const std::string&) { options.has_seed = true; });
    cmd->add_option("--trials", options.trials, "trial count (overrides trials)")
        ->each([&](const std::string&) { options.has_trials = true; });
    cmd->add_flag("--quiet", options.quiet, "suppress progress logs");
  };

  CLI::App* bounds = app.add_subcommand("bounds", "per-trace bound trajectories and mean curves");
  CLI::App* simulate = app.add_subcommand("simulate", "stop-feedback decoding campaign");
  CLI::App* tune = app.add_subcommand("tune", "grid search over (r, sigma_h2)");
  CLI::App* szego = app.add_subcommand("szego", "penalty rate convergence table");
  CLI::App* trace = app.add_subcommand("trace", "dump one channel realization");
  for (CLI::App* cmd : {bounds, simulate, tune, szego, trace}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds->parsed()) return cmd_bounds(options);
    if (simulate->parsed()) return cmd_simulate(options);
    if (tune->parsed()) return cmd_tune(options);
    if (szego->parsed()) return cmd_szego(options);
    if (trace->parsed()) return cmd_trace(options);
  } catch (const vlsf::FeasibilityError& error) {
    std::cerr << "feasibility error: " << error.what() << "\n";
    return kExitFeasibility;
  } catch (const vlsf::ConvergenceError& error) {
    std::cerr << "convergence error: " << error.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
