#include "retrodict/core/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "retrodict/errors.hpp"

namespace retrodict::core {

namespace {

// Normalizes `values` in place and returns the pre-normalization deviation.
double normalize(std::span<double> values, std::string_view what) {
  double sum = 0.0;
  for (const double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw InputError(std::string(what) + ": entries must be finite and non-negative");
    sum += v;
  }
  if (!(sum > 0.0)) throw InputError(std::string(what) + ": total mass must be positive");
  for (double& v : values) v /= sum;
  return sum - 1.0;
}

std::size_t find_label(const Labels& labels, std::string_view label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InputError("unknown state label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

void require_unique(const Labels& labels, std::string_view what) {
  Labels sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw InputError(std::string(what) + ": duplicate state label '" + *dup + "'");
}

}  // namespace

Labels index_labels(std::size_t n) {
  Labels labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

DiscreteDistribution::DiscreteDistribution(Labels labels, std::vector<double> weights)
    : labels_(std::move(labels)), mass_(std::move(weights)) {
  if (mass_.empty()) throw InputError("distribution over an empty state space");
  if (labels_.size() != mass_.size()) throw InputError("distribution: label count does not match mass count");
  require_unique(labels_, "distribution");
  raw_deviation_ = normalize(mass_, "distribution");
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> weights)
    : DiscreteDistribution(index_labels(weights.size()), std::vector<double>(weights)) {}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t n) { return uniform(index_labels(n)); }

DiscreteDistribution DiscreteDistribution::uniform(Labels labels) {
  const std::size_t n = labels.size();
  return DiscreteDistribution(std::move(labels), std::vector<double>(n, 1.0));
}

DiscreteDistribution DiscreteDistribution::delta(std::size_t n, std::size_t at) {
  if (at >= n) throw InputError("delta distribution: index out of range");
  std::vector<double> w(n, 0.0);
  w[at] = 1.0;
  return DiscreteDistribution(std::move(w));
}

bool DiscreteDistribution::was_normalized() const noexcept {
  return std::abs(raw_deviation_) <= kNormalizationTolerance;
}

std::size_t DiscreteDistribution::index_of(std::string_view label) const { return find_label(labels_, label); }

TransitionKernel::TransitionKernel(Labels source, Labels target, Matrix rows, std::optional<double> elapsed_time)
    : source_(std::move(source)), target_(std::move(target)), rows_(std::move(rows)), elapsed_(elapsed_time) {
  if (rows_.rows() == 0 || rows_.cols() == 0) throw InputError("transition kernel with an empty state space");
  if (source_.size() != rows_.rows()) throw InputError("transition kernel: source label count does not match rows");
  if (target_.size() != rows_.cols()) throw InputError("transition kernel: target label count does not match columns");
  require_unique(source_, "transition kernel sources");
  require_unique(target_, "transition kernel targets");
  for (std::size_t a = 0; a < rows_.rows(); ++a) {
    const double dev = normalize(rows_.row(a), "transition kernel row " + source_[a]);
    max_row_deviation_ = std::max(max_row_deviation_, std::abs(dev));
  }
}

TransitionKernel::TransitionKernel(Matrix rows, std::optional<double> elapsed_time)
    : TransitionKernel(index_labels(rows.rows()), index_labels(rows.cols()), Matrix(rows), elapsed_time) {}

TransitionKernel TransitionKernel::identity(std::size_t n) { return TransitionKernel(Matrix::identity(n)); }

TransitionKernel TransitionKernel::constant_rows(const DiscreteDistribution& q, std::size_t n_source) {
  Matrix m(n_source, q.size());
  for (std::size_t a = 0; a < n_source; ++a) {
    std::copy(q.mass().begin(), q.mass().end(), m.row(a).begin());
  }
  return TransitionKernel(index_labels(n_source), q.labels(), std::move(m));
}

DiscreteDistribution TransitionKernel::row_distribution(std::size_t alpha) const {
  const auto r = row(alpha);
  return DiscreteDistribution(target_, std::vector<double>(r.begin(), r.end()));
}

bool TransitionKernel::strictly_positive() const noexcept {
  const auto d = rows_.data();
  return std::all_of(d.begin(), d.end(), [](double v) { return v > 0.0; });
}

TransitionKernel compose(const TransitionKernel& first, const TransitionKernel& then) {
  if (first.target_size() != then.source_size()) {
    throw InputError("cannot compose kernels: intermediate state spaces differ in size");
  }
  if (first.target_labels() != then.source_labels()) {
    throw InputError("cannot compose kernels: intermediate state labels differ");
  }
  std::optional<double> elapsed;
  if (first.elapsed_time() && then.elapsed_time()) elapsed = *first.elapsed_time() + *then.elapsed_time();
  return TransitionKernel(first.source_labels(), then.target_labels(), multiply(first.matrix(), then.matrix()), elapsed);
}

RetrodictionKernel::RetrodictionKernel(Labels initial, Labels final_states, Matrix rows, std::vector<bool> support)
    : initial_(std::move(initial)), final_(std::move(final_states)), rows_(std::move(rows)), support_(std::move(support)) {
  if (initial_.size() != rows_.cols() || final_.size() != rows_.rows() || support_.size() != rows_.rows()) {
    throw InputError("retrodiction kernel: shape mismatch");
  }
}

std::size_t RetrodictionKernel::unsupported_count() const noexcept {
  return static_cast<std::size_t>(std::count(support_.begin(), support_.end(), false));
}

std::span<const double> RetrodictionKernel::row(std::size_t omega) const {
  if (omega >= final_size()) throw InputError("final state index out of range");
  if (!support_[omega]) {
    throw UndefinedRetrodiction("final state '" + final_[omega] + "' has zero probability; retrodiction is undefined");
  }
  return rows_.row(omega);
}

std::size_t RetrodictionKernel::final_index(std::string_view label) const { return find_label(final_, label); }

TransitionKernel as_transition_kernel(const RetrodictionKernel& rk) {
  if (rk.unsupported_count() != 0) throw UndefinedRetrodiction("retrodiction kernel has unsupported final states");
  return TransitionKernel(rk.final_labels(), rk.initial_labels(), rk.matrix());
}

}  // namespace retrodict::core
