#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace retrodict::logistic {

struct LogisticScanConfig {
  std::vector<double> r_grid;
  std::size_t bins = 500;
  std::size_t samples_per_bin = 10000;
  std::vector<std::size_t> taus{100, 500};
  std::size_t replicates = 20;
  std::uint64_t seed = 0;

  /// Throws InputError on empty grids, r outside (0, 4] or zero counts.
  void validate() const;
};

struct ScanPoint {
  double r = 0.0;
  std::size_t tau = 0;
  double mean = 0.0;        // differential <S_R> in nats, averaged over replicates
  double std_dev = 0.0;     // sample standard deviation across replicates
  std::size_t replicates = 0;
  double normalized = 0.0;  // mean / log(bins)
};

struct ScanResult {
  std::size_t bins = 0;
  std::vector<ScanPoint> points;  // sorted by (r, tau)

  /// Points of one tau, sorted by r.
  std::vector<ScanPoint> for_tau(std::size_t tau) const;
};

/// Replicate k at grid index i uses the stream (seed, i, k), so results do
/// not depend on `threads`. `progress` receives (finished, total) work items.
ScanResult scan(const LogisticScanConfig& config, unsigned threads = 1,
                const std::function<void(std::size_t, std::size_t)>& progress = {});

/// Differential <S_R> of one random coarse graining at each tau.
std::vector<double> scan_replicate(double r, const LogisticScanConfig& config, std::size_t r_index,
                                   std::size_t replicate);

/// Evenly spaced grid lo, lo + step, ..., up to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, double step);

}  // namespace retrodict::logistic
