#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retrodict/core/matrix.hpp"

namespace retrodict::core {

using Labels = std::vector<std::string>;

/// Labels "0", "1", ..., n-1.
Labels index_labels(std::size_t n);

/// Tolerance on |sum - 1| below which an input is considered normalized.
inline constexpr double kNormalizationTolerance = 1e-12;

/// Probability vector over a finite labelled state space.
///
/// Construction accepts any non-negative, finite weights with a positive sum
/// and renormalizes them. The pre-normalization deviation (sum - 1) is kept so
/// callers reading files can tell rounding noise from a genuinely
/// unnormalized input.
class DiscreteDistribution {
 public:
  DiscreteDistribution(Labels labels, std::vector<double> weights);
  explicit DiscreteDistribution(std::vector<double> weights);

  static DiscreteDistribution uniform(std::size_t n);
  static DiscreteDistribution uniform(Labels labels);
  static DiscreteDistribution delta(std::size_t n, std::size_t at);

  std::size_t size() const noexcept { return mass_.size(); }
  const Labels& labels() const noexcept { return labels_; }
  std::span<const double> mass() const noexcept { return mass_; }
  double operator[](std::size_t i) const noexcept { return mass_[i]; }

  /// Sum of the weights as given, minus one.
  double raw_deviation() const noexcept { return raw_deviation_; }
  bool was_normalized() const noexcept;

  std::size_t index_of(std::string_view label) const;

 private:
  Labels labels_;
  std::vector<double> mass_;
  double raw_deviation_ = 0.0;
};

/// Row-stochastic kernel: entry (alpha, omega) is T(omega | alpha), the
/// probability of ending in omega after starting in alpha. Source and target
/// spaces may differ.
class TransitionKernel {
 public:
  TransitionKernel(Labels source, Labels target, Matrix rows, std::optional<double> elapsed_time = std::nullopt);
  explicit TransitionKernel(Matrix rows, std::optional<double> elapsed_time = std::nullopt);

  static TransitionKernel identity(std::size_t n);
  /// Every source state maps to the same distribution q.
  static TransitionKernel constant_rows(const DiscreteDistribution& q, std::size_t n_source);

  std::size_t source_size() const noexcept { return rows_.rows(); }
  std::size_t target_size() const noexcept { return rows_.cols(); }
  const Labels& source_labels() const noexcept { return source_; }
  const Labels& target_labels() const noexcept { return target_; }
  const Matrix& matrix() const noexcept { return rows_; }
  std::optional<double> elapsed_time() const noexcept { return elapsed_; }

  double operator()(std::size_t alpha, std::size_t omega) const noexcept { return rows_(alpha, omega); }
  std::span<const double> row(std::size_t alpha) const noexcept { return rows_.row(alpha); }
  DiscreteDistribution row_distribution(std::size_t alpha) const;

  /// Largest |row sum - 1| seen before renormalization.
  double max_row_deviation() const noexcept { return max_row_deviation_; }

  bool strictly_positive() const noexcept;

 private:
  Labels source_;
  Labels target_;
  Matrix rows_;
  std::optional<double> elapsed_;
  double max_row_deviation_ = 0.0;
};

/// `first` followed by `then`: T(omega | alpha) = sum_k first(k | alpha) then(omega | k).
TransitionKernel compose(const TransitionKernel& first, const TransitionKernel& then);

/// Bayes inverse of a transition kernel: entry (omega, alpha) is R(alpha | omega).
/// Rows of final states with zero probability are flagged unsupported and hold
/// no distribution.
class RetrodictionKernel {
 public:
  RetrodictionKernel(Labels initial, Labels final_states, Matrix rows, std::vector<bool> support);

  std::size_t final_size() const noexcept { return rows_.rows(); }
  std::size_t initial_size() const noexcept { return rows_.cols(); }
  const Labels& initial_labels() const noexcept { return initial_; }
  const Labels& final_labels() const noexcept { return final_; }
  const std::vector<bool>& support_mask() const noexcept { return support_; }
  bool supported(std::size_t omega) const noexcept { return support_[omega]; }
  std::size_t unsupported_count() const noexcept;

  /// Throws UndefinedRetrodiction for an unsupported omega.
  std::span<const double> row(std::size_t omega) const;
  std::size_t final_index(std::string_view label) const;

  /// Raw storage; unsupported rows are zero.
  const Matrix& matrix() const noexcept { return rows_; }

 private:
  Labels initial_;
  Labels final_;
  Matrix rows_;
  std::vector<bool> support_;
};

/// View a fully supported retrodiction kernel as a transition kernel from
/// final states to initial states.
TransitionKernel as_transition_kernel(const RetrodictionKernel& rk);

}  // namespace retrodict::core
