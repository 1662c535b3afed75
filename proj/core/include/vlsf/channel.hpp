#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace vlsf {

/// Physical model constants: fading correlation, noise variance, and
/// per-symbol signal power.
struct ChannelParams {
  double rho;       // fading correlation, in [0, 1)
  double sigma_z2;  // noise variance, > 0
  double p0;        // signal power, >= 0

  ChannelParams(double rho, double sigma_z2, double p0);

  double snr() const { return p0 / sigma_z2; }
};

/// Gaussian random codebook: m_count codewords of length horizon with
/// i.i.d. N(0, p0) symbols, fully determined by the seed.
class Codebook {
 public:
  Codebook(std::size_t m_count, std::size_t horizon, double p0, std::uint64_t seed);

  std::size_t m_count() const { return m_count_; }
  std::size_t horizon() const { return horizon_; }
  std::uint64_t seed() const { return seed_; }

  /// Codeword prefix access: symbol k of codeword m.
  double symbol(std::size_t m, std::size_t k) const { return symbols_[m * horizon_ + k]; }
  std::span<const double> codeword(std::size_t m) const;

 private:
  std::size_t m_count_;
  std::size_t horizon_;
  std::uint64_t seed_;
  std::vector<double> symbols_;
};

/// One channel realization: transmitted prefix, fading path, received
/// sequence, all of equal length.
struct Trace {
  std::vector<double> x;
  std::vector<double> h;
  std::vector<double> y;
};

/// Stationary first-order Gauss-Markov path h_1..h_n: h_0 ~ N(0,1),
/// h_k = rho h_{k-1} + sqrt(1-rho^2) w_k. Accepts rho = 1 (degenerate
/// constant path), unlike the channel-parameter validation.
std::vector<double> sample_fading(std::size_t n, double rho, std::uint64_t seed);

/// y_k = h_k x_k + z_k with z_k i.i.d. N(0, sigma_z2).
std::vector<double> transmit(std::span<const double> x, std::span<const double> h,
                             double sigma_z2, std::uint64_t seed);

/// Noiseless test hook: y_k = h_k x_k exactly.
std::vector<double> transmit_noiseless(std::span<const double> x, std::span<const double> h);

Codebook gen_codebook(std::size_t m_count, std::size_t horizon, double p0, std::uint64_t seed);

/// Draws a full trace with x ~ N(0, p0) i.i.d., one derived stream per
/// role (input, fading, noise) so the roles stay independent.
Trace make_trace(std::size_t n, const ChannelParams& channel, std::uint64_t seed);

/// Debug CSV layout: index, x, h, y.
void write_trace_csv(const Trace& trace, std::ostream& os);

/// Debug CSV layout: m, k, x.
void write_codebook_csv(const Codebook& codebook, std::ostream& os);

}  // namespace vlsf
