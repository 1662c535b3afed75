#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "vlsf/bounds.hpp"
#include "vlsf/channel.hpp"
#include "vlsf/stats.hpp"

namespace vlsf {

/// Decoding threshold log((m_count - 1) / epsilon), natural logarithm.
/// Any threshold at or above this value certifies error probability at
/// most epsilon for the stop-feedback rule.
double threshold(std::size_t m_count, double epsilon);

struct DecoderConfig {
  std::size_t m_count;
  double epsilon;
  double gamma;  // decoding threshold; default from threshold()
  std::size_t n_max;
  ChannelParams channel;
  ReferenceParams reference;

  DecoderConfig(std::size_t m_count, double epsilon, std::size_t n_max, ChannelParams channel,
                ReferenceParams reference);
  DecoderConfig(std::size_t m_count, double epsilon, double gamma, std::size_t n_max,
                ChannelParams channel, ReferenceParams reference);
};

enum class Outcome { Correct, WrongMessage, Ambiguous, Truncated };

const char* outcome_name(Outcome outcome);

/// Result of one decode trial. tau is the stopping time; for Truncated
/// trials no crossing happened and decoded is empty.
struct StoppingRecord {
  std::size_t tau = 0;  // 0 marks truncation
  std::optional<std::size_t> decoded;
  Outcome outcome = Outcome::Truncated;
  double trajectory_peak = 0.0;
  std::uint64_t seed = 0;
};

/// Optional per-trial capture of the certified-bound trajectory of the
/// winning codeword (transmitted codeword when truncated), for figure
/// output.
struct TrialTrajectory {
  std::size_t codeword = 0;
  std::vector<double> psi;  // entry k is the bound at prefix k+1
};

/// Runs one stop-feedback trial: transmits the codeword of `message`,
/// then extends every codeword's certified lower bound symbol by symbol
/// and stops at the first crossing of config.gamma. A unique crosser
/// decodes; simultaneous crossers declare an error; no crossing by
/// n_max truncates.
StoppingRecord decode_trial(const Codebook& codebook, std::size_t message,
                            const DecoderConfig& config, std::uint64_t seed,
                            TrialTrajectory* trajectory = nullptr);

struct CampaignStats {
  std::size_t trials = 0;
  std::size_t errors = 0;       // wrong + ambiguous + truncated
  std::size_t truncations = 0;
  double error_rate = 0.0;
  ConfidenceInterval error_ci{0.0, 1.0};
  double truncation_rate = 0.0;
  std::map<std::size_t, std::size_t> tau_histogram;  // stopped trials only
  double mean_tau = 0.0;                             // over stopped trials
};

/// Independent trials with derived seeds and uniformly drawn messages;
/// a fresh codebook per trial realizes the random-coding ensemble.
/// Deterministic in master_seed.
CampaignStats run_campaign(const DecoderConfig& config, std::size_t trials,
                           std::uint64_t master_seed);

/// CSV layouts for campaign output: histogram rows (tau, count) and a
/// one-row summary.
void write_histogram_csv(const CampaignStats& stats, std::ostream& os);
void write_summary_csv(const CampaignStats& stats, std::ostream& os);

}  // namespace vlsf
