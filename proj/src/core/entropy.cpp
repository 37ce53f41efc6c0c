#include "retrodict/core/entropy.hpp"

#include <cmath>

#include "retrodict/errors.hpp"

namespace retrodict::core {

namespace {

void require_prior_matches(const TransitionKernel& kernel, const DiscreteDistribution& prior) {
  if (prior.size() != kernel.source_size()) {
    throw InputError("prior has " + std::to_string(prior.size()) + " states but the kernel has " +
                     std::to_string(kernel.source_size()) + " source states");
  }
}

}  // namespace

double shannon_entropy(std::span<const double> p) noexcept {
  double h = 0.0;
  for (const double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double shannon_entropy(const DiscreteDistribution& p) noexcept { return shannon_entropy(p.mass()); }

DiscreteDistribution evolve(const DiscreteDistribution& prior, const TransitionKernel& kernel) {
  require_prior_matches(kernel, prior);
  std::vector<double> out(kernel.target_size(), 0.0);
  for (std::size_t a = 0; a < kernel.source_size(); ++a) {
    const double w = prior[a];
    if (w == 0.0) continue;
    const auto row = kernel.row(a);
    for (std::size_t o = 0; o < out.size(); ++o) out[o] += w * row[o];
  }
  return DiscreteDistribution(kernel.target_labels(), std::move(out));
}

RetrodictionKernel bayes_invert(const TransitionKernel& kernel, const DiscreteDistribution& prior) {
  require_prior_matches(kernel, prior);
  const std::size_t n_init = kernel.source_size();
  const std::size_t n_final = kernel.target_size();

  // Joint P(alpha, omega) laid out by final state, then normalized per row.
  Matrix rows(n_final, n_init);
  std::vector<double> observed(n_final, 0.0);
  for (std::size_t a = 0; a < n_init; ++a) {
    const double w = prior[a];
    for (std::size_t o = 0; o < n_final; ++o) {
      const double joint = kernel(a, o) * w;
      rows(o, a) = joint;
      observed[o] += joint;
    }
  }
  std::vector<bool> support(n_final, false);
  for (std::size_t o = 0; o < n_final; ++o) {
    if (observed[o] > 0.0) {
      support[o] = true;
      for (double& v : rows.row(o)) v /= observed[o];
    }
  }
  return RetrodictionKernel(kernel.source_labels(), kernel.target_labels(), std::move(rows), std::move(support));
}

double retrodiction_entropy(const RetrodictionKernel& rk, std::size_t omega) { return shannon_entropy(rk.row(omega)); }

double retrodiction_entropy(const RetrodictionKernel& rk, std::string_view omega) {
  return retrodiction_entropy(rk, rk.final_index(omega));
}

double average_retrodiction_entropy(const TransitionKernel& kernel, const DiscreteDistribution& prior) {
  const auto observed = evolve(prior, kernel);
  const auto rk = bayes_invert(kernel, prior);
  double total = 0.0;
  for (std::size_t o = 0; o < rk.final_size(); ++o) {
    if (!rk.supported(o)) continue;
    total += observed[o] * shannon_entropy(rk.row(o));
  }
  return total;
}

double average_transition_entropy(const TransitionKernel& kernel, const DiscreteDistribution& prior) {
  require_prior_matches(kernel, prior);
  double total = 0.0;
  for (std::size_t a = 0; a < kernel.source_size(); ++a) {
    if (prior[a] == 0.0) continue;
    total += prior[a] * shannon_entropy(kernel.row(a));
  }
  return total;
}

double posterior_dispersion(const RetrodictionKernel& rk, std::size_t omega,
                            std::span<const std::vector<double>> coordinates) {
  const auto posterior = rk.row(omega);
  if (coordinates.size() != posterior.size()) {
    throw InputError("posterior dispersion: every initial state needs a coordinate");
  }
  const std::size_t dim = coordinates.empty() ? 0 : coordinates.front().size();
  for (const auto& c : coordinates) {
    if (c.size() != dim) throw InputError("posterior dispersion: coordinates have inconsistent dimension");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < posterior.size(); ++i) {
    if (posterior[i] == 0.0) continue;
    for (std::size_t j = 0; j < posterior.size(); ++j) {
      if (posterior[j] == 0.0) continue;
      double sq = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = coordinates[i][k] - coordinates[j][k];
        sq += diff * diff;
      }
      total += posterior[i] * posterior[j] * sq;
    }
  }
  return total;
}

double posterior_dispersion(const RetrodictionKernel& rk, std::string_view omega,
                            const std::map<std::string, std::vector<double>, std::less<>>& coordinates) {
  std::vector<std::vector<double>> ordered;
  ordered.reserve(rk.initial_size());
  for (const auto& label : rk.initial_labels()) {
    const auto it = coordinates.find(label);
    if (it == coordinates.end()) throw InputError("posterior dispersion: missing coordinate for state '" + label + "'");
    ordered.push_back(it->second);
  }
  return posterior_dispersion(rk, rk.final_index(omega), ordered);
}

}  // namespace retrodict::core
