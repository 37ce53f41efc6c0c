#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retrodict/core/distribution.hpp"

namespace retrodict::core {

// All entropies are in nats; 0 log 0 is taken as 0.

double shannon_entropy(std::span<const double> p) noexcept;
double shannon_entropy(const DiscreteDistribution& p) noexcept;

/// Observation distribution P_t(omega) = sum_alpha T(omega | alpha) P_0(alpha).
DiscreteDistribution evolve(const DiscreteDistribution& prior, const TransitionKernel& kernel);

/// R(alpha | omega) = T(omega | alpha) P_0(alpha) / P_t(omega).
RetrodictionKernel bayes_invert(const TransitionKernel& kernel, const DiscreteDistribution& prior);

/// Entropy of one retrodiction row. Throws UndefinedRetrodiction if omega has
/// zero probability.
double retrodiction_entropy(const RetrodictionKernel& rk, std::size_t omega);
double retrodiction_entropy(const RetrodictionKernel& rk, std::string_view omega);

/// <S_R> = sum_omega P_t(omega) S_R(omega); zero-probability final states carry no weight.
double average_retrodiction_entropy(const TransitionKernel& kernel, const DiscreteDistribution& prior);

/// <S_T> = sum_alpha P_0(alpha) S(T_alpha).
double average_transition_entropy(const TransitionKernel& kernel, const DiscreteDistribution& prior);

/// Mean pairwise squared distance between two independent draws from R(. | omega).
/// `coordinates[alpha]` is the position of initial state alpha.
double posterior_dispersion(const RetrodictionKernel& rk, std::size_t omega,
                            std::span<const std::vector<double>> coordinates);
double posterior_dispersion(const RetrodictionKernel& rk, std::string_view omega,
                            const std::map<std::string, std::vector<double>, std::less<>>& coordinates);

}  // namespace retrodict::core
