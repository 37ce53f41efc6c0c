#include "retrodict/core/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "retrodict/core/entropy.hpp"
#include "retrodict/errors.hpp"

namespace retrodict::core {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Elementwise log with log 0 = -inf.
std::vector<double> logs_of(std::span<const double> v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double x) { return x > 0.0 ? std::log(x) : -kInf; });
  return out;
}

// D(p || q) given precomputed logs of both.
double kl_with_logs(std::span<const double> p, std::span<const double> log_p, std::span<const double> log_q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (std::isinf(log_q[i])) return kInf;
    total += p[i] * (log_p[i] - log_q[i]);
  }
  return total;
}

// sum_{i,j} w_i w_j D(row_i || row_j) over rows of `m` with positive weight.
double pairwise_average(const Matrix& m, std::span<const double> weights) {
  std::vector<std::vector<double>> logs(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (weights[i] > 0.0) logs[i] = logs_of(m.row(i));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!(weights[i] > 0.0)) continue;
    for (std::size_t j = 0; j < m.rows(); ++j) {
      if (!(weights[j] > 0.0) || i == j) continue;
      const double d = kl_with_logs(m.row(i), logs[i], logs[j]);
      if (std::isinf(d)) return kInf;
      total += weights[i] * weights[j] * d;
    }
  }
  return total;
}

// sum_i w_i D(row_i || q), or sum_i w_i D(q || row_i) when `reversed`.
double average_against(const Matrix& m, std::span<const double> weights, std::span<const double> q, bool reversed) {
  const auto log_q = logs_of(q);
  double total = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!(weights[i] > 0.0)) continue;
    const auto row = m.row(i);
    const auto log_row = logs_of(row);
    const double d = reversed ? kl_with_logs(q, log_q, log_row) : kl_with_logs(row, log_row, log_q);
    if (std::isinf(d)) return kInf;
    total += weights[i] * d;
  }
  return total;
}

bool relation_checkable(double lhs, double rhs) { return std::isfinite(lhs) && std::isfinite(rhs); }

}  // namespace

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw InputError("kl divergence: distributions live on different state spaces");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    total += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(total, 0.0);
}

double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  return kl_divergence(p.mass(), q.mass());
}

std::array<std::pair<std::string_view, double>, 6> KlFamily::entries() const {
  return {{{"kl_t_t", t_t}, {"kl_t_pt", t_pt}, {"kl_pt_t", pt_t}, {"kl_r_r", r_r}, {"kl_r_p0", r_p0}, {"kl_p0_r", p0_r}}};
}

bool KlFamily::any_infinite() const {
  const auto e = entries();
  return std::any_of(e.begin(), e.end(), [](const auto& kv) { return std::isinf(kv.second); });
}

KlFamily averaged_kl_family(const TransitionKernel& kernel, const DiscreteDistribution& prior) {
  const auto observed = evolve(prior, kernel);
  const auto rk = bayes_invert(kernel, prior);
  const auto& forward = kernel.matrix();
  const auto& backward = rk.matrix();  // unsupported rows carry zero weight below

  KlFamily kl;
  kl.t_t = pairwise_average(forward, prior.mass());
  kl.t_pt = average_against(forward, prior.mass(), observed.mass(), false);
  kl.pt_t = average_against(forward, prior.mass(), observed.mass(), true);
  kl.r_r = pairwise_average(backward, observed.mass());
  kl.r_p0 = average_against(backward, observed.mass(), prior.mass(), false);
  kl.p0_r = average_against(backward, observed.mass(), prior.mass(), true);
  return kl;
}

double mutual_information(const TransitionKernel& kernel, const DiscreteDistribution& prior) {
  const auto observed = evolve(prior, kernel);
  const auto rk = bayes_invert(kernel, prior);
  return average_against(rk.matrix(), observed.mass(), prior.mass(), false);
}

double KlRelation::residual() const { return checkable ? std::abs(lhs - rhs) : 0.0; }

double KlRelationReport::max_residual() const {
  double worst = 0.0;
  for (const auto& r : relations) worst = std::max(worst, r.residual());
  return worst;
}

std::size_t KlRelationReport::unchecked() const {
  return static_cast<std::size_t>(std::count_if(relations.begin(), relations.end(), [](const auto& r) { return !r.checkable; }));
}

KlRelationReport verify_kl_relations(const TransitionKernel& kernel, const DiscreteDistribution& prior) {
  const auto kl = averaged_kl_family(kernel, prior);
  const double s0 = shannon_entropy(prior);
  const double st = shannon_entropy(evolve(prior, kernel));
  const double avg_st = average_transition_entropy(kernel, prior);
  const double avg_sr = average_retrodiction_entropy(kernel, prior);

  KlRelationReport report;
  auto add = [&report](std::string name, double lhs, double rhs) {
    report.relations.push_back({std::move(name), lhs, rhs, relation_checkable(lhs, rhs)});
  };
  add("<D(T1||T2)> = <D(P0||R)> + St - <ST>", kl.t_t, kl.p0_r + st - avg_st);
  add("<D(T||Pt)> = <D(R||P0)>", kl.t_pt, kl.r_p0);
  add("<D(R||P0)> = S0 - <SR>", kl.r_p0, s0 - avg_sr);
  add("S0 - <SR> = St - <ST>", s0 - avg_sr, st - avg_st);
  add("<D(Pt||T)> = <D(P0||R)>", kl.pt_t, kl.p0_r);
  add("<D(T1||T2)> = <D(R1||R2)>", kl.t_t, kl.r_r);
  add("<D(T||Pt) + D(Pt||T)> = <D(T1||T2)>", kl.t_pt + kl.pt_t, kl.t_t);
  add("<D(R||P0) + D(P0||R)> = <D(T1||T2)>", kl.r_p0 + kl.p0_r, kl.t_t);
  return report;
}

EntropyReport::EntropyReport(double s0, double st, double avg_st, double avg_sr, double mutual_info, KlFamily kl,
                             std::size_t unsupported_final_states)
    : s0_(s0), st_(st), avg_st_(avg_st), avg_sr_(avg_sr), mutual_info_(mutual_info), kl_(kl),
      unsupported_(unsupported_final_states) {
  if (!(std::abs(fundamental_residual()) <= kIdentityTolerance)) {
    throw ConsistencyError("entropy report: <S_R> != <S_T> - (S_t - S_0), residual " +
                           std::to_string(fundamental_residual()));
  }
  if (!(std::abs(mutual_info_residual()) <= kIdentityTolerance)) {
    throw ConsistencyError("entropy report: I != S_0 - <S_R>, residual " + std::to_string(mutual_info_residual()));
  }
}

double EntropyReport::fundamental_residual() const noexcept { return avg_sr_ - (avg_st_ - (st_ - s0_)); }

double EntropyReport::mutual_info_residual() const noexcept { return mutual_info_ - (s0_ - avg_sr_); }

EntropyReport entropy_report(const TransitionKernel& kernel, const DiscreteDistribution& prior) {
  const auto observed = evolve(prior, kernel);
  const auto rk = bayes_invert(kernel, prior);
  return EntropyReport(shannon_entropy(prior), shannon_entropy(observed), average_transition_entropy(kernel, prior),
                       average_retrodiction_entropy(kernel, prior), mutual_information(kernel, prior),
                       averaged_kl_family(kernel, prior), rk.unsupported_count());
}

}  // namespace retrodict::core
