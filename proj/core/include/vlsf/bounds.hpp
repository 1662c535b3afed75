#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "vlsf/channel.hpp"

namespace vlsf {

/// Relaxation knobs for the i.i.d. Gaussian reference fading measure:
/// Holder order r (> 1), its stored conjugate s = r/(r-1), and the
/// reference fading variance sigma_h2. Construction validates the
/// feasibility condition sigma_h2 > ((r-1)/r) * (1+rho)/(1-rho) against
/// the correlation the parameters are bound to.
struct ReferenceParams {
  double r;
  double s;
  double sigma_h2;
  double rho;  // the correlation the feasibility check was made against

  ReferenceParams(double r, double sigma_h2, double rho);
};

/// Feasibility floor ((r-1)/r) * (1+rho)/(1-rho); sigma_h2 must exceed it.
double feasibility_floor(double r, double rho);
bool is_feasible(double r, double sigma_h2, double rho);

/// log E_Q[L^r]: the log r-th moment of the likelihood ratio between
/// the correlated fading law and the i.i.d. reference, evaluated
/// per-eigenvalue in the log domain. Throws FeasibilityError when any
/// per-eigenvalue term r*sigma_h2/lambda - (r-1) is nonpositive.
double renyi_log_moment(std::size_t n, double rho, double sigma_h2, double r);

/// Change-of-measure cost ((r-1)/r) D_r(P||Q) = (1/r) log E_Q[L^r].
double renyi_penalty(std::size_t n, double rho, double sigma_h2, double r);

/// n -> infinity limit of renyi_log_moment / n: the spectral-density
/// average of the per-eigenvalue contribution.
double szego_rate(double rho, double sigma_h2, double r);

/// Alternative closed-form limit integrand, kept for comparison output
/// only; disagrees with the finite-n moments in degenerate corners
/// (e.g. rho = 0, sigma_h2 = 1 where the exact moment is identically 0).
double szego_rate_printed_form(double rho, double sigma_h2, double r);

/// KL divergence D(P_{H^n} || Q_{H^n}) between the correlated fading
/// law and the i.i.d. reference.
double kl_penalty(std::size_t n, double rho, double sigma_h2);

/// Single-symbol envelope factor log E_{h ~ N(0, sigma_h2)}[phi_v(h)(y_k)^s]
/// with v(h) = sigma_z2 + p0 h^2; the per-prefix envelope is its running sum.
double holder_envelope_term(double y_k, const ReferenceParams& params,
                            const ChannelParams& channel);

/// Per-prefix cumulative sums of the single-symbol envelope factors.
/// Entry n equals log E_Q[f(y^n|H^n)^s].
std::vector<double> holder_envelope_log(std::span<const double> y, const ReferenceParams& params,
                                        const ChannelParams& channel);

/// Per-prefix cumulative sums of E_{h ~ N(0, sigma_h2)}[log phi_v(h)(y_k)].
std::vector<double> jensen_envelope_log(std::span<const double> y, double sigma_h2,
                                        const ChannelParams& channel);

enum class BoundKind { Lower, Upper };

/// Per-prefix decomposition of a bound on the information density:
/// value = log_cond - envelope - penalty (lower) or
/// value = log_cond + penalty - envelope (upper). The penalty column is
/// nondecreasing in n and independent of the trace.
struct BoundTrajectory {
  std::vector<std::size_t> n_values;
  std::vector<double> log_cond;
  std::vector<double> envelope;
  std::vector<double> penalty;
  std::vector<double> value;
  BoundKind kind;
};

/// Certified lower bound psi(x^n, y^n) for every prefix n = 1..N.
BoundTrajectory lower_bound_trajectory(std::span<const double> x, std::span<const double> y,
                                       const ReferenceParams& params,
                                       const ChannelParams& channel);

/// Upper bound phi(x^n, y^n) for every prefix n = 1..N.
BoundTrajectory upper_bound_trajectory(std::span<const double> x, std::span<const double> y,
                                       double sigma_h2, const ChannelParams& channel);

/// CSV layout: n, log_cond, envelope, penalty, value, kind.
void write_trajectory_csv(const BoundTrajectory& trajectory, std::ostream& os);

/// Trace-independent penalty sequences for n = 1..n_max, shared by every
/// codeword of a campaign. Values are bit-identical to the scalar entry
/// points; batching here avoids recomputing the eigenvalue sums per trial.
std::vector<double> renyi_penalty_schedule(std::size_t n_max, double rho, double sigma_h2,
                                           double r);
std::vector<double> kl_penalty_schedule(std::size_t n_max, double rho, double sigma_h2);

}  // namespace vlsf
