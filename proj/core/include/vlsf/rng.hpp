#pragma once

#include <cstdint>
#include <random>

namespace vlsf {

/// SplitMix64 mixing step (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x);

/// Derives the seed of an independent stream from a master seed.
/// Deterministic: stream i of a campaign always receives the same seed,
/// regardless of scheduling. Nest calls to split further (per-trial,
/// then per-role within a trial).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream);

/// Deterministic normal sampler. Box-Muller over explicit 53-bit
/// uniforms so the sequence does not depend on the standard library's
/// distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on (0, 1].
  double uniform();

  /// Standard normal.
  double normal();

  /// Uniform integer in [0, bound). Rejection-sampled, bound >= 1.
  std::uint64_t uniform_index(std::uint64_t bound);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace vlsf
