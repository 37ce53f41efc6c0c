#include "retrodict/core/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "retrodict/core/divergence.hpp"
#include "retrodict/core/entropy.hpp"
#include "retrodict/errors.hpp"

namespace retrodict::core {

DiscreteDistribution stationary_distribution(const TransitionKernel& kernel, double tolerance,
                                             std::size_t max_iterations) {
  if (kernel.source_size() != kernel.target_size()) throw InputError("stationary distribution needs a square kernel");
  auto current = DiscreteDistribution::uniform(kernel.source_labels());
  for (std::size_t it = 0; it < max_iterations; ++it) {
    auto next = evolve(current, kernel);
    double diff = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) diff = std::max(diff, std::abs(next[i] - current[i]));
    current = std::move(next);
    if (diff < tolerance) return current;
  }
  throw InputError("stationary distribution: power iteration did not converge");
}

MonotonicityReport kl_monotonicity_check(std::span<const TransitionKernel> steps, const DiscreteDistribution& p0,
                                         const DiscreteDistribution& q0, double slack) {
  if (p0.size() != q0.size()) throw InputError("monotonicity check: p0 and q0 live on different state spaces");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& k = steps[i];
    if (k.source_size() != k.target_size() || k.source_size() != p0.size()) {
      throw InputError("monotonicity check: kernel " + std::to_string(i) + " does not act on the shared state space");
    }
    if (i > 0 && steps[i - 1].target_labels() != k.source_labels()) {
      throw InputError("monotonicity check: kernel " + std::to_string(i) + " is not composable with its predecessor");
    }
  }

  MonotonicityReport report;
  report.max_increase = -std::numeric_limits<double>::infinity();
  auto p = p0;
  auto q = q0;
  report.divergences.push_back(kl_divergence(p, q));
  for (const auto& k : steps) {
    p = evolve(p, k);
    q = evolve(q, k);
    const double d = kl_divergence(p, q);
    const double prev = report.divergences.back();
    double growth = 0.0;
    if (std::isinf(prev)) {
      growth = -std::numeric_limits<double>::infinity();
    } else if (std::isinf(d)) {
      growth = std::numeric_limits<double>::infinity();
    } else {
      growth = d - prev;
    }
    report.max_increase = std::max(report.max_increase, growth);
    if (growth > slack) ++report.violations;
    report.divergences.push_back(d);
  }
  if (steps.empty()) report.max_increase = 0.0;
  return report;
}

namespace {

struct RateSnapshot {
  TransitionKernel kernel;
  DiscreteDistribution observed;
  double st = 0.0;
  double avg_st = 0.0;
  double avg_sr = 0.0;
  double kl_tt = 0.0;
  std::vector<double> kl_p0_r;  // D(P0 || R_w) per final state; NaN if unsupported
};

RateSnapshot snapshot(TransitionKernel kernel, const DiscreteDistribution& prior) {
  auto observed = evolve(prior, kernel);
  const auto rk = bayes_invert(kernel, prior);
  RateSnapshot s{kernel, observed, 0.0, 0.0, 0.0, 0.0, {}};
  s.st = shannon_entropy(observed);
  s.avg_st = average_transition_entropy(kernel, prior);
  s.avg_sr = average_retrodiction_entropy(kernel, prior);
  double tt = 0.0;
  for (std::size_t a = 0; a < kernel.source_size() && std::isfinite(tt); ++a) {
    for (std::size_t b = 0; b < kernel.source_size(); ++b) {
      if (prior[a] == 0.0 || prior[b] == 0.0 || a == b) continue;
      const double d = kl_divergence(kernel.row(a), kernel.row(b));
      if (std::isinf(d)) {
        tt = d;
        break;
      }
      tt += prior[a] * prior[b] * d;
    }
  }
  s.kl_tt = tt;
  s.kl_p0_r.resize(rk.final_size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t o = 0; o < rk.final_size(); ++o) {
    if (rk.supported(o)) s.kl_p0_r[o] = kl_divergence(prior.mass(), rk.row(o));
  }
  return s;
}

}  // namespace

RateBoundReport rate_bound_check(const TransitionKernel& one_step, const DiscreteDistribution& prior, std::size_t steps,
                                 double slack) {
  if (one_step.source_size() != one_step.target_size()) throw InputError("rate bound check needs a square kernel");
  if (prior.size() != one_step.source_size()) throw InputError("rate bound check: prior does not match kernel");

  RateBoundReport report;
  auto current = snapshot(TransitionKernel(one_step.source_labels(), one_step.target_labels(),
                                           Matrix::identity(one_step.source_size())),
                          prior);
  for (std::size_t t = 0; t < steps; ++t) {
    auto next = snapshot(compose(current.kernel, one_step), prior);
    RateBoundStep step;
    step.step = t;

    if (next.kernel.matrix() == current.kernel.matrix()) {
      // Nothing moved: every difference is exactly zero, even for infinite divergences.
      report.steps.push_back(step);
      current = std::move(next);
      continue;
    }

    step.delta_st = next.st - current.st;
    step.delta_avg_st = next.avg_st - current.avg_st;
    step.delta_avg_sr = next.avg_sr - current.avg_sr;
    step.delta_kl_tt = next.kl_tt - current.kl_tt;
    double avg_delta = 0.0;
    bool finite = std::isfinite(step.delta_kl_tt);
    for (std::size_t o = 0; o < current.observed.size() && finite; ++o) {
      const double w = current.observed[o];
      if (w == 0.0) continue;
      const double diff = next.kl_p0_r[o] - current.kl_p0_r[o];
      if (!std::isfinite(diff)) finite = false;
      avg_delta += w * diff;
    }
    if (!finite) {
      step.verifiable = false;
      step.holds = false;
      ++report.unverifiable;
    } else {
      step.avg_delta_kl_p0_r = avg_delta;
      step.bound = step.delta_avg_st + step.delta_kl_tt - avg_delta;
      step.sr_lower_bound = -step.delta_kl_tt + avg_delta;
      step.excess = step.delta_st - step.bound;
      step.holds = step.excess <= slack;
      if (!step.holds) ++report.violations;
    }
    report.steps.push_back(step);
    current = std::move(next);
  }
  return report;
}

}  // namespace retrodict::core
