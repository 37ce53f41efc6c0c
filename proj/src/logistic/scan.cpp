#include "retrodict/logistic/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>

#include "retrodict/errors.hpp"
#include "retrodict/logistic/coarse_graining.hpp"
#include "retrodict/logistic/map.hpp"
#include "retrodict/parallel.hpp"
#include "retrodict/random.hpp"

namespace retrodict::logistic {

void LogisticScanConfig::validate() const {
  if (r_grid.empty()) throw InputError("logistic scan: r grid is empty");
  for (double r : r_grid) require_parameter(r);
  if (bins < 2) throw InputError("logistic scan: need at least two bins");
  if (samples_per_bin == 0 || replicates == 0) throw InputError("logistic scan: counts must be positive");
  if (taus.empty()) throw InputError("logistic scan: need at least one tau");
}

std::vector<ScanPoint> ScanResult::for_tau(std::size_t tau) const {
  std::vector<ScanPoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out), [tau](const auto& p) { return p.tau == tau; });
  return out;
}

std::vector<double> scan_replicate(double r, const LogisticScanConfig& config, std::size_t r_index,
                                   std::size_t replicate) {
  auto engine = make_stream(config.seed, {r_index, replicate});
  const auto grain = CoarseGraining::random(config.bins, engine);
  const auto kernels = build_transition_matrices(grain, r, config.taus, config.samples_per_bin, engine);
  std::vector<double> out;
  for (const auto& k : kernels) out.push_back(differential_retrodiction_entropy(k, grain));
  return out;
}

ScanResult scan(const LogisticScanConfig& input, unsigned threads,
                const std::function<void(std::size_t, std::size_t)>& progress) {
  input.validate();
  auto config = input;
  std::sort(config.taus.begin(), config.taus.end());
  config.taus.erase(std::unique(config.taus.begin(), config.taus.end()), config.taus.end());

  const std::size_t n_r = config.r_grid.size();
  const std::size_t total = n_r * config.replicates;
  // values[(i * replicates + k) * n_tau + tau_index]
  std::vector<double> values(total * config.taus.size());
  std::atomic<std::size_t> finished{0};
  std::mutex progress_mutex;
  parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t item = begin; item < end; ++item) {
      const std::size_t i = item / config.replicates;
      const std::size_t k = item % config.replicates;
      const auto v = scan_replicate(config.r_grid[i], config, i, k);
      std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(item * config.taus.size()));
      const std::size_t done = ++finished;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(done, total);
      }
    }
  });

  ScanResult result;
  result.bins = config.bins;
  const double log_b = std::log(static_cast<double>(config.bins));
  for (std::size_t i = 0; i < n_r; ++i) {
    for (std::size_t t = 0; t < config.taus.size(); ++t) {
      double sum = 0.0;
      for (std::size_t k = 0; k < config.replicates; ++k) sum += values[(i * config.replicates + k) * config.taus.size() + t];
      const double mean = sum / static_cast<double>(config.replicates);
      double ss = 0.0;
      for (std::size_t k = 0; k < config.replicates; ++k) {
        const double d = values[(i * config.replicates + k) * config.taus.size() + t] - mean;
        ss += d * d;
      }
      const double sd = config.replicates > 1 ? std::sqrt(ss / static_cast<double>(config.replicates - 1)) : 0.0;
      result.points.push_back({config.r_grid[i], config.taus[t], mean, sd, config.replicates, mean / log_b});
    }
  }
  std::stable_sort(result.points.begin(), result.points.end(), [](const auto& a, const auto& b) {
    return a.r != b.r ? a.r < b.r : a.tau < b.tau;
  });
  return result;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw InputError("linear grid: need step > 0 and hi >= lo");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

}  // namespace retrodict::logistic
