#include "vlsf/channel.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "vlsf/csv.hpp"
#include "vlsf/rng.hpp"

namespace vlsf {

ChannelParams::ChannelParams(double rho, double sigma_z2, double p0)
    : rho(rho), sigma_z2(sigma_z2), p0(p0) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::domain_error("ChannelParams: rho must lie in [0, 1)");
  }
  if (!(sigma_z2 > 0.0)) throw std::domain_error("ChannelParams: sigma_z2 must be positive");
  if (!(p0 >= 0.0)) throw std::domain_error("ChannelParams: p0 must be nonnegative");
}

Codebook::Codebook(std::size_t m_count, std::size_t horizon, double p0, std::uint64_t seed)
    : m_count_(m_count), horizon_(horizon), seed_(seed) {
  if (m_count < 1) throw std::domain_error("Codebook: m_count must be positive");
  if (horizon < 1) throw std::domain_error("Codebook: horizon must be positive");
  if (!(p0 >= 0.0)) throw std::domain_error("Codebook: p0 must be nonnegative");
  const double amplitude = std::sqrt(p0);
  symbols_.resize(m_count * horizon);
  for (std::size_t m = 0; m < m_count; ++m) {
    // One derived stream per codeword keeps rows reproducible in isolation.
    Rng rng(derive_seed(seed, m));
    for (std::size_t k = 0; k < horizon; ++k) symbols_[m * horizon + k] = amplitude * rng.normal();
  }
}

std::span<const double> Codebook::codeword(std::size_t m) const {
  if (m >= m_count_) throw std::out_of_range("Codebook: codeword index out of range");
  return {symbols_.data() + m * horizon_, horizon_};
}

std::vector<double> sample_fading(std::size_t n, double rho, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("sample_fading: n must be positive");
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::domain_error("sample_fading: rho must lie in [0, 1]");
  }
  Rng rng(seed);
  const double innovation_sd = std::sqrt(1.0 - rho * rho);
  std::vector<double> h(n);
  double state = rng.normal();  // h_0 from the stationary law
  for (std::size_t k = 0; k < n; ++k) {
    state = rho * state + innovation_sd * rng.normal();
    h[k] = state;
  }
  return h;
}

std::vector<double> transmit(std::span<const double> x, std::span<const double> h,
                             double sigma_z2, std::uint64_t seed) {
  if (x.size() != h.size()) throw std::domain_error("transmit: length mismatch");
  if (!(sigma_z2 > 0.0)) throw std::domain_error("transmit: sigma_z2 must be positive");
  Rng rng(seed);
  const double noise_sd = std::sqrt(sigma_z2);
  std::vector<double> y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = h[k] * x[k] + noise_sd * rng.normal();
  return y;
}

std::vector<double> transmit_noiseless(std::span<const double> x, std::span<const double> h) {
  if (x.size() != h.size()) throw std::domain_error("transmit: length mismatch");
  std::vector<double> y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = h[k] * x[k];
  return y;
}

Codebook gen_codebook(std::size_t m_count, std::size_t horizon, double p0, std::uint64_t seed) {
  return Codebook(m_count, horizon, p0, seed);
}

Trace make_trace(std::size_t n, const ChannelParams& channel, std::uint64_t seed) {
  Trace trace;
  Rng input_rng(derive_seed(seed, 0));
  const double amplitude = std::sqrt(channel.p0);
  trace.x.resize(n);
  for (std::size_t k = 0; k < n; ++k) trace.x[k] = amplitude * input_rng.normal();
  trace.h = sample_fading(n, channel.rho, derive_seed(seed, 1));
  trace.y = transmit(trace.x, trace.h, channel.sigma_z2, derive_seed(seed, 2));
  return trace;
}

void write_trace_csv(const Trace& trace, std::ostream& os) {
  os << "index,x,h,y\n";
  for (std::size_t k = 0; k < trace.x.size(); ++k) {
    os << k << ',' << csv_double(trace.x[k]) << ',' << csv_double(trace.h[k]) << ','
       << csv_double(trace.y[k]) << '\n';
  }
}

void write_codebook_csv(const Codebook& codebook, std::ostream& os) {
  os << "m,k,x\n";
  for (std::size_t m = 0; m < codebook.m_count(); ++m) {
    for (std::size_t k = 0; k < codebook.horizon(); ++k) {
      os << m << ',' << k << ',' << csv_double(codebook.symbol(m, k)) << '\n';
    }
  }
}

}  // namespace vlsf
