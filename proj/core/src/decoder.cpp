#include "vlsf/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "vlsf/csv.hpp"
#include "vlsf/parallel.hpp"
#include "vlsf/rng.hpp"
#include "vlsf/seq_cholesky.hpp"

namespace vlsf {

double threshold(std::size_t m_count, double epsilon) {
  if (m_count < 2) throw std::domain_error("threshold: m_count must be at least 2");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::domain_error("threshold: epsilon must lie in (0, 1]");
  }
  return std::log(static_cast<double>(m_count - 1) / epsilon);
}

DecoderConfig::DecoderConfig(std::size_t m_count, double epsilon, std::size_t n_max,
                             ChannelParams channel, ReferenceParams reference)
    : DecoderConfig(m_count, epsilon, threshold(m_count, epsilon), n_max, channel, reference) {}

DecoderConfig::DecoderConfig(std::size_t m_count, double epsilon, double gamma, std::size_t n_max,
                             ChannelParams channel, ReferenceParams reference)
    : m_count(m_count),
      epsilon(epsilon),
      gamma(gamma),
      n_max(n_max),
      channel(channel),
      reference(reference) {
  if (m_count < 2) throw std::domain_error("DecoderConfig: m_count must be at least 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error("DecoderConfig: epsilon must lie in (0, 1)");
  }
  if (n_max < 1) throw std::domain_error("DecoderConfig: n_max must be positive");
  if (reference.rho != channel.rho) {
    throw std::domain_error("DecoderConfig: reference params bound to a different rho");
  }
}

const char* outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::Correct: return "correct";
    case Outcome::WrongMessage: return "wrong_message";
    case Outcome::Ambiguous: return "ambiguous";
    case Outcome::Truncated: return "truncated";
  }
  return "unknown";
}

StoppingRecord decode_trial(const Codebook& codebook, std::size_t message,
                            const DecoderConfig& config, std::uint64_t seed,
                            TrialTrajectory* trajectory) {
  if (message >= codebook.m_count()) throw std::domain_error("decode_trial: message out of range");
  if (codebook.m_count() != config.m_count) {
    throw std::domain_error("decode_trial: codebook size does not match the config");
  }
  if (codebook.horizon() < config.n_max) {
    throw std::domain_error("decode_trial: codebook horizon shorter than n_max");
  }

  const std::size_t m_count = config.m_count;
  const auto x_true = codebook.codeword(message);
  const auto h = sample_fading(config.n_max, config.channel.rho, derive_seed(seed, 1));
  const auto y = transmit(x_true.first(config.n_max), h, config.channel.sigma_z2,
                          derive_seed(seed, 2));

  const std::vector<double> penalties = renyi_penalty_schedule(
      config.n_max, config.channel.rho, config.reference.sigma_h2, config.reference.r);

  std::vector<SeqCholesky> factors(m_count,
                                   SeqCholesky(config.channel.rho, config.channel.sigma_z2));
  std::vector<std::vector<double>> captured;
  if (trajectory != nullptr) captured.resize(m_count);

  StoppingRecord record;
  record.seed = seed;
  record.trajectory_peak = -std::numeric_limits<double>::infinity();

  double holder_sum = 0.0;
  for (std::size_t n = 1; n <= config.n_max; ++n) {
    const double y_n = y[n - 1];
    holder_sum += holder_envelope_term(y_n, config.reference, config.channel);
    // Envelope and penalty are shared by every codeword at this step.
    const double offset = holder_sum / config.reference.s + penalties[n - 1];

    std::size_t crossers = 0;
    std::size_t last_crosser = 0;
    for (std::size_t m = 0; m < m_count; ++m) {
      factors[m].append(codebook.symbol(m, n - 1), y_n);
      const double psi = factors[m].log_density() - offset;
      if (trajectory != nullptr) captured[m].push_back(psi);
      record.trajectory_peak = std::max(record.trajectory_peak, psi);
      if (psi >= config.gamma) {
        ++crossers;
        last_crosser = m;
      }
    }

    if (crossers > 0) {
      record.tau = n;
      if (crossers == 1) {
        record.decoded = last_crosser;
        record.outcome = last_crosser == message ? Outcome::Correct : Outcome::WrongMessage;
      } else {
        record.outcome = Outcome::Ambiguous;
      }
      break;
    }
  }

  if (trajectory != nullptr) {
    trajectory->codeword = record.decoded.value_or(message);
    trajectory->psi = std::move(captured[trajectory->codeword]);
  }
  return record;
}

CampaignStats run_campaign(const DecoderConfig& config, std::size_t trials,
                           std::uint64_t master_seed) {
  if (trials < 1) throw std::domain_error("run_campaign: trials must be positive");

  // Warm the penalty memo before the workers race for it.
  renyi_penalty_schedule(config.n_max, config.channel.rho, config.reference.sigma_h2,
                         config.reference.r);

  std::vector<StoppingRecord> records(trials);
  parallel_for(trials, [&](std::size_t t) {
    const std::uint64_t trial_seed = derive_seed(master_seed, t);
    Rng message_rng(derive_seed(trial_seed, 3));
    const std::size_t message = message_rng.uniform_index(config.m_count);
    const Codebook codebook(config.m_count, config.n_max, config.channel.p0,
                            derive_seed(trial_seed, 4));
    records[t] = decode_trial(codebook, message, config, trial_seed);
  });

  CampaignStats stats;
  stats.trials = trials;
  double tau_sum = 0.0;
  std::size_t stopped = 0;
  for (const StoppingRecord& record : records) {
    if (record.outcome == Outcome::Truncated) {
      ++stats.truncations;
      ++stats.errors;
      continue;
    }
    if (record.outcome != Outcome::Correct) ++stats.errors;
    ++stopped;
    tau_sum += static_cast<double>(record.tau);
    ++stats.tau_histogram[record.tau];
  }
  stats.error_rate = static_cast<double>(stats.errors) / static_cast<double>(trials);
  stats.truncation_rate = static_cast<double>(stats.truncations) / static_cast<double>(trials);
  stats.error_ci = clopper_pearson(stats.errors, trials);
  stats.mean_tau = stopped > 0 ? tau_sum / static_cast<double>(stopped) : 0.0;
  return stats;
}

void write_histogram_csv(const CampaignStats& stats, std::ostream& os) {
  os << "tau,count\n";
  for (const auto& [tau, count] : stats.tau_histogram) os << tau << ',' << count << '\n';
}

void write_summary_csv(const CampaignStats& stats, std::ostream& os) {
  os << "trials,errors,truncations,mean_tau,ci_low,ci_high\n";
  os << stats.trials << ',' << stats.errors << ',' << stats.truncations << ','
     << csv_double(stats.mean_tau) << ',' << csv_double(stats.error_ci.low) << ','
     << csv_double(stats.error_ci.high) << '\n';
}

}  // namespace vlsf
