#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "retrodict/core/distribution.hpp"
#include "retrodict/langevin/sde.hpp"

namespace retrodict::langevin {

/// Uniform bins over [lo, hi]. Values outside are clamped into the edge bins.
struct BinGrid {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t bins = 1;

  double width() const noexcept { return (hi - lo) / static_cast<double>(bins); }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  std::size_t locate(double x) const noexcept;
  std::vector<double> edges() const;
};

inline constexpr std::size_t kMinOccupiedBins = 10;
inline constexpr double kMinInitialCoverage = 0.999;

/// Initial-state grid of one dimension: prior mean +- half_width_sd sigma, or
/// for a point prior y +- half_width_sd sqrt(D(t)/2).
BinGrid initial_grid(const SdeConfig& config, std::size_t dim, std::size_t bins, double half_width_sd = 6.0);

struct EstimatorOptions {
  std::size_t final_bins = 128;
  std::size_t resamples = 200;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Estimate for one dimension. The final state is binned by the average
/// coordinate of the N particles, which carries all the information the
/// final positions hold about the release point.
struct DimensionEstimate {
  BinGrid initial_grid;
  BinGrid final_grid;
  core::TransitionKernel empirical_kernel;  // initial bin -> final bin
  core::DiscreteDistribution initial_mass;  // fraction of trials per initial bin
  std::size_t empty_rows = 0;               // initial bins without samples (zero weight)
  std::size_t occupied_initial_bins = 0;
  double coverage = 1.0;                    // fraction of releases inside the initial grid
  double discrete_sr = 0.0;                 // <S_R> of the binned kernel
  double sr = 0.0;                          // discrete_sr + log(initial bin width)
};

struct BinnedEstimate {
  std::vector<DimensionEstimate> dims;
  /// Differential <S_R>, summed over dimensions (prior and dynamics factorize).
  double sr_estimate = 0.0;
  double standard_error = 0.0;
  double ci_low = 0.0;   // 2.5% bootstrap percentile
  double ci_high = 0.0;  // 97.5% bootstrap percentile
  std::size_t resamples = 0;
  /// Noiseless dynamics: the estimate measures the grid, not the process.
  bool resolution_floor = false;
};

/// Bins (release point, final mean) pairs and evaluates the retrodiction
/// entropy of the empirical kernel. Throws InputError when a grid covers less
/// than kMinInitialCoverage of the releases and UnreliableEstimate when fewer
/// than kMinOccupiedBins initial bins are populated.
BinnedEstimate empirical_retrodiction_entropy(const Ensemble& ensemble, const std::vector<BinGrid>& initial_grids,
                                              const EstimatorOptions& options = {});

}  // namespace retrodict::langevin
