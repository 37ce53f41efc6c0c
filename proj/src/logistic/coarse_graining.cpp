#include "retrodict/logistic/coarse_graining.hpp"

#include <algorithm>
#include <cmath>

#include "retrodict/core/entropy.hpp"
#include "retrodict/errors.hpp"
#include "retrodict/logistic/map.hpp"

namespace retrodict::logistic {

CoarseGraining::CoarseGraining(std::vector<double> cuts) : cuts_(std::move(cuts)) {
  double previous = 0.0;
  for (double c : cuts_) {
    if (!(c > previous && c < 1.0)) throw InputError("coarse graining: cuts must increase strictly inside (0, 1)");
    widths_.push_back(c - previous);
    previous = c;
  }
  widths_.push_back(1.0 - previous);
}

CoarseGraining CoarseGraining::random(std::size_t bins, Engine& engine) {
  if (bins == 0) throw InputError("coarse graining: need at least one bin");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    std::vector<double> cuts(bins - 1);
    for (auto& c : cuts) c = unit(engine);
    std::sort(cuts.begin(), cuts.end());
    // Ties or a cut at 0 would leave an empty bin; redraw (probability ~ b^2 2^-53).
    const bool distinct = std::adjacent_find(cuts.begin(), cuts.end()) == cuts.end();
    if (distinct && (cuts.empty() || cuts.front() > 0.0)) return CoarseGraining(std::move(cuts));
  }
}

CoarseGraining CoarseGraining::uniform(std::size_t bins) {
  if (bins == 0) throw InputError("coarse graining: need at least one bin");
  std::vector<double> cuts(bins - 1);
  for (std::size_t i = 0; i + 1 < bins; ++i) cuts[i] = static_cast<double>(i + 1) / static_cast<double>(bins);
  return CoarseGraining(std::move(cuts));
}

core::DiscreteDistribution CoarseGraining::prior_on_bins() const { return core::DiscreteDistribution(widths_); }

std::size_t CoarseGraining::locate(double x) const noexcept {
  return static_cast<std::size_t>(std::upper_bound(cuts_.begin(), cuts_.end(), x) - cuts_.begin());
}

std::vector<core::TransitionKernel> build_transition_matrices(const CoarseGraining& grain, double r,
                                                              const std::vector<std::size_t>& taus,
                                                              std::size_t samples_per_bin, Engine& engine,
                                                              std::size_t* clamps) {
  require_parameter(r);
  if (taus.empty() || !std::is_sorted(taus.begin(), taus.end())) {
    throw InputError("transition matrices: taus must be a non-empty ascending list");
  }
  if (samples_per_bin == 0) throw InputError("transition matrices: need at least one sample per bin");
  const std::size_t b = grain.bins();
  std::vector<core::Matrix> counts(taus.size(), core::Matrix(b, b, 0.0));
  std::vector<double> x(samples_per_bin);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t clamp_total = 0;

  for (std::size_t j = 0; j < b; ++j) {
    const double lo = grain.lower(j);
    const double width = grain.widths()[j];
    for (auto& v : x) v = lo + width * unit(engine);
    std::size_t done = 0;
    for (std::size_t k = 0; k < taus.size(); ++k) {
      for (; done < taus[k]; ++done) {
        std::size_t clamped = 0;
        for (auto& v : x) {
          const double next = r * v * (1.0 - v);
          clamped += static_cast<std::size_t>(next < 0.0 || next > 1.0);
          v = std::clamp(next, 0.0, 1.0);
        }
        clamp_total += clamped;
      }
      auto row = counts[k].row(j);
      for (double v : x) row[grain.locate(v)] += 1.0;
    }
  }
  if (clamps) *clamps += clamp_total;

  std::vector<core::TransitionKernel> kernels;
  const double s = static_cast<double>(samples_per_bin);
  for (std::size_t k = 0; k < taus.size(); ++k) {
    auto& m = counts[k];
    for (std::size_t j = 0; j < b; ++j) {
      for (auto& v : m.row(j)) v /= s;
    }
    kernels.emplace_back(std::move(m), static_cast<double>(taus[k]));
  }
  return kernels;
}

core::TransitionKernel build_transition_matrix(const CoarseGraining& grain, double r, std::size_t tau,
                                               std::size_t samples_per_bin, Engine& engine) {
  return std::move(build_transition_matrices(grain, r, {tau}, samples_per_bin, engine).front());
}

double differential_retrodiction_entropy(const core::TransitionKernel& kernel, const CoarseGraining& grain) {
  if (kernel.source_size() != grain.bins()) throw InputError("differential entropy: kernel is not built on this grain");
  const auto prior = grain.prior_on_bins();
  const auto observed = core::evolve(prior, kernel);
  const auto rk = core::bayes_invert(kernel, prior);
  std::vector<double> log_widths(grain.bins());
  for (std::size_t j = 0; j < grain.bins(); ++j) log_widths[j] = std::log(grain.widths()[j]);
  double total = 0.0;
  for (std::size_t w = 0; w < rk.final_size(); ++w) {
    if (!rk.supported(w)) continue;
    const auto row = rk.row(w);
    double h = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] > 0.0) h -= row[j] * (std::log(row[j]) - log_widths[j]);
    }
    total += observed[w] * h;
  }
  return total;
}

}  // namespace retrodict::logistic
