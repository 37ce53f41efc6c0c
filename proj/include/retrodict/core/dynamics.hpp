#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "retrodict/core/distribution.hpp"

namespace retrodict::core {

/// Stationary distribution of a square kernel by power iteration, stopping
/// when successive iterates differ by less than `tolerance` in the sup norm.
/// Throws InputError if the kernel is not square or the iteration does not
/// settle within `max_iterations` (periodic or very slowly mixing chains).
DiscreteDistribution stationary_distribution(const TransitionKernel& kernel, double tolerance = 1e-14,
                                             std::size_t max_iterations = 1'000'000);

struct MonotonicityReport {
  std::vector<double> divergences;  // D(p_t || q_t) for t = 0 .. steps
  std::size_t violations = 0;       // steps where the divergence grew by more than the slack
  double max_increase = 0.0;        // largest observed growth (negative if always shrinking)
};

/// Evolves p0 and q0 through the same sequence of one-step kernels and
/// tracks D(p_t || q_t), which cannot grow under shared Markov dynamics.
MonotonicityReport kl_monotonicity_check(std::span<const TransitionKernel> steps, const DiscreteDistribution& p0,
                                         const DiscreteDistribution& q0, double slack = 1e-12);

/// One forward-difference step t -> t+1 of the rate inequality
///   dS_t <= d<S_T> + d<D(T1||T2)> - <d D(P0||R)>.
/// The last average uses the observation distribution at time t as weights.
struct RateBoundStep {
  std::size_t step = 0;  // t; the differences span t -> t+1
  bool verifiable = true;
  double delta_st = 0.0;
  double delta_avg_st = 0.0;
  double delta_kl_tt = 0.0;
  double avg_delta_kl_p0_r = 0.0;
  double bound = 0.0;             // right-hand side
  double delta_avg_sr = 0.0;
  double sr_lower_bound = 0.0;    // -delta_kl_tt + avg_delta_kl_p0_r
  /// delta_st minus the bound; the inequality holds when this is <= slack.
  double excess = 0.0;
  bool holds = true;
};

struct RateBoundReport {
  std::vector<RateBoundStep> steps;
  std::size_t violations = 0;
  std::size_t unverifiable = 0;
};

/// Iterates T^(t) = K^t from t = 0 (identity) through `steps` and evaluates
/// the discrete rate inequality at every step. Steps where a divergence is
/// infinite are marked unverifiable, except steps where nothing changes,
/// which hold with equality.
RateBoundReport rate_bound_check(const TransitionKernel& one_step, const DiscreteDistribution& prior,
                                 std::size_t steps, double slack = 1e-12);

}  // namespace retrodict::core
