#include "retrodict/core/random_systems.hpp"

#include <algorithm>

namespace retrodict::core {

DiscreteDistribution random_distribution(std::size_t n, Engine& engine) {
  std::exponential_distribution<double> weight(1.0);
  std::vector<double> w(n);
  for (auto& v : w) v = weight(engine) + 1e-300;
  return DiscreteDistribution(std::move(w));
}

TransitionKernel random_kernel(std::size_t n_source, std::size_t n_target, Engine& engine, double zero_fraction) {
  std::exponential_distribution<double> weight(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> column(0, n_target - 1);
  Matrix m(n_source, n_target);
  for (std::size_t a = 0; a < n_source; ++a) {
    auto row = m.row(a);
    for (auto& v : row) v = weight(engine) + 1e-300;
    if (zero_fraction > 0.0) {
      const std::size_t keep = column(engine);
      for (std::size_t w = 0; w < n_target; ++w) {
        if (w != keep && unit(engine) < zero_fraction) row[w] = 0.0;
      }
    }
  }
  return TransitionKernel(std::move(m));
}

}  // namespace retrodict::core
