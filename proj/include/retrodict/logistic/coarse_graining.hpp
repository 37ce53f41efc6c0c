#pragma once

#include <cstddef>
#include <vector>

#include "retrodict/core/distribution.hpp"
#include "retrodict/random.hpp"

namespace retrodict::logistic {

/// Partition of [0, 1] into bins by sorted interior cuts.
class CoarseGraining {
 public:
  /// Cuts must be strictly increasing inside (0, 1).
  explicit CoarseGraining(std::vector<double> cuts);

  /// b - 1 cuts drawn uniformly and sorted.
  static CoarseGraining random(std::size_t bins, Engine& engine);
  static CoarseGraining uniform(std::size_t bins);

  std::size_t bins() const noexcept { return widths_.size(); }
  const std::vector<double>& cuts() const noexcept { return cuts_; }
  const std::vector<double>& widths() const noexcept { return widths_; }
  double lower(std::size_t bin) const noexcept { return bin == 0 ? 0.0 : cuts_[bin - 1]; }
  double upper(std::size_t bin) const noexcept { return bin + 1 == bins() ? 1.0 : cuts_[bin]; }

  /// A point drawn uniformly from [0, 1] falls in bin j with probability width_j.
  core::DiscreteDistribution prior_on_bins() const;

  /// Bin containing x, by binary search over the cuts.
  std::size_t locate(double x) const noexcept;

 private:
  std::vector<double> cuts_;
  std::vector<double> widths_;
};

/// Transition matrices T^(tau) for every tau in `taus` (ascending). Row j is
/// estimated from `samples_per_bin` uniform points of bin j iterated tau
/// times; rows are exact count fractions.
std::vector<core::TransitionKernel> build_transition_matrices(const CoarseGraining& grain, double r,
                                                              const std::vector<std::size_t>& taus,
                                                              std::size_t samples_per_bin, Engine& engine,
                                                              std::size_t* clamps = nullptr);

core::TransitionKernel build_transition_matrix(const CoarseGraining& grain, double r, std::size_t tau,
                                               std::size_t samples_per_bin, Engine& engine);

/// Average over final bins of -sum_j R(j | w) log(R(j | w) / width_j), the
/// entropy of the piecewise-constant posterior density, with the
/// width-proportional prior. Final bins with no mass carry no weight.
double differential_retrodiction_entropy(const core::TransitionKernel& kernel, const CoarseGraining& grain);

}  // namespace retrodict::logistic
