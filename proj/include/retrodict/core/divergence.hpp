#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "retrodict/core/distribution.hpp"

namespace retrodict::core {

/// D(p || q) in nats. Returns +infinity when q vanishes somewhere p does not.
double kl_divergence(std::span<const double> p, std::span<const double> q);
double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// The six averaged divergences between the kernel rows, the retrodiction
/// rows and the two marginals. Averages over initial states use P_0 weights,
/// over final states P_t weights. Any infinite term with positive weight makes
/// its average infinite.
struct KlFamily {
  double t_t = 0.0;    // <D(T_a1 || T_a2)>
  double t_pt = 0.0;   // <D(T_a || P_t)>
  double pt_t = 0.0;   // <D(P_t || T_a)>
  double r_r = 0.0;    // <D(R_w1 || R_w2)>
  double r_p0 = 0.0;   // <D(R_w || P_0)>
  double p0_r = 0.0;   // <D(P_0 || R_w)>

  std::array<std::pair<std::string_view, double>, 6> entries() const;
  bool any_infinite() const;
};

KlFamily averaged_kl_family(const TransitionKernel& kernel, const DiscreteDistribution& prior);

/// I(X_0; X_t) computed as <D(R_w || P_0)>.
double mutual_information(const TransitionKernel& kernel, const DiscreteDistribution& prior);

struct KlRelation {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool checkable = true;  // false when either side is infinite

  double residual() const;
};

struct KlRelationReport {
  std::vector<KlRelation> relations;

  /// Largest residual over checkable relations (0 if none are checkable).
  double max_residual() const;
  std::size_t unchecked() const;
};

/// Evaluates the six averaged-divergence relations and the two symmetric
/// combinations. Each side is computed from its own summation.
KlRelationReport verify_kl_relations(const TransitionKernel& kernel, const DiscreteDistribution& prior);

/// Entropy bookkeeping for one (kernel, prior) pair.
///
/// Construction enforces avg_sr = avg_st - (st - s0) and
/// mutual_info = s0 - avg_sr to kIdentityTolerance; a violation throws
/// ConsistencyError.
class EntropyReport {
 public:
  static constexpr double kIdentityTolerance = 1e-10;

  EntropyReport(double s0, double st, double avg_st, double avg_sr, double mutual_info, KlFamily kl,
                std::size_t unsupported_final_states = 0);

  double s0() const noexcept { return s0_; }
  double st() const noexcept { return st_; }
  double avg_st() const noexcept { return avg_st_; }
  double avg_sr() const noexcept { return avg_sr_; }
  double mutual_info() const noexcept { return mutual_info_; }
  const KlFamily& kl_family() const noexcept { return kl_; }
  std::size_t unsupported_final_states() const noexcept { return unsupported_; }

  /// avg_sr - (avg_st - (st - s0))
  double fundamental_residual() const noexcept;
  /// mutual_info - (s0 - avg_sr)
  double mutual_info_residual() const noexcept;

 private:
  double s0_, st_, avg_st_, avg_sr_, mutual_info_;
  KlFamily kl_;
  std::size_t unsupported_;
};

/// Every quantity is computed from its own definition; <S_R> comes from the
/// Bayes inverse, never from the identity it is checked against.
EntropyReport entropy_report(const TransitionKernel& kernel, const DiscreteDistribution& prior);

}  // namespace retrodict::core
