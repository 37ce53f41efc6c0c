#pragma once

#include <cstddef>

#include "retrodict/core/distribution.hpp"
#include "retrodict/random.hpp"

namespace retrodict::core {

/// Probability vector with i.i.d. exponential weights (flat Dirichlet), so
/// every entry is positive.
DiscreteDistribution random_distribution(std::size_t n, Engine& engine);

/// Kernel whose rows are independent flat-Dirichlet draws. With
/// zero_fraction > 0 each entry is zeroed with that probability (rows keep at
/// least one positive entry).
TransitionKernel random_kernel(std::size_t n_source, std::size_t n_target, Engine& engine, double zero_fraction = 0.0);

}  // namespace retrodict::core
