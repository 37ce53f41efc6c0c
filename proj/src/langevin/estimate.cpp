#include "retrodict/langevin/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "retrodict/core/entropy.hpp"
#include "retrodict/errors.hpp"
#include "retrodict/parallel.hpp"
#include "retrodict/random.hpp"

namespace retrodict::langevin {

namespace {

struct BinnedPairs {
  std::size_t n_initial = 0;
  std::size_t n_final = 0;
  std::vector<std::uint32_t> initial;  // per trial
  std::vector<std::uint32_t> final;    // per trial
};

struct Counts {
  std::vector<double> joint;  // [initial][final]
  std::vector<double> rows;
};

Counts count(const BinnedPairs& pairs, std::span<const std::size_t> trials) {
  Counts c{std::vector<double>(pairs.n_initial * pairs.n_final, 0.0), std::vector<double>(pairs.n_initial, 0.0)};
  for (std::size_t k : trials) {
    c.joint[pairs.initial[k] * pairs.n_final + pairs.final[k]] += 1.0;
    c.rows[pairs.initial[k]] += 1.0;
  }
  return c;
}

// Empirical kernel and initial mass; empty rows get a placeholder uniform row
// that carries zero weight.
std::pair<core::TransitionKernel, core::DiscreteDistribution> kernel_from(const Counts& c, std::size_t n_initial,
                                                                          std::size_t n_final, std::size_t& empty) {
  core::Matrix m(n_initial, n_final, 0.0);
  empty = 0;
  for (std::size_t i = 0; i < n_initial; ++i) {
    if (c.rows[i] == 0.0) {
      ++empty;
      for (std::size_t j = 0; j < n_final; ++j) m(i, j) = 1.0;
      continue;
    }
    for (std::size_t j = 0; j < n_final; ++j) m(i, j) = c.joint[i * n_final + j] / c.rows[i];
  }
  return {core::TransitionKernel(std::move(m)), core::DiscreteDistribution(c.rows)};
}

double discrete_sr(const Counts& c, std::size_t n_initial, std::size_t n_final) {
  std::size_t empty = 0;
  const auto [kernel, prior] = kernel_from(c, n_initial, n_final, empty);
  return core::average_retrodiction_entropy(kernel, prior);
}

}  // namespace

std::size_t BinGrid::locate(double x) const noexcept {
  if (!(x > lo)) return 0;
  const auto k = static_cast<std::size_t>((x - lo) / width());
  return std::min(k, bins - 1);
}

std::vector<double> BinGrid::edges() const {
  std::vector<double> out(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) out[i] = lo + width() * static_cast<double>(i);
  out.back() = hi;
  return out;
}

BinGrid initial_grid(const SdeConfig& config, std::size_t dim, std::size_t bins, double half_width_sd) {
  if (bins == 0) throw InputError("bin grid: need at least one bin");
  if (const auto* g = std::get_if<GaussianPrior>(&config.prior)) {
    return {g->mean - half_width_sd * g->sigma, g->mean + half_width_sd * g->sigma, bins};
  }
  const double y = std::get<PointMassPrior>(config.prior).y;
  const double spread = gaussian::ou_spread(gaussian::diffusion_of(config.kind).at(dim),
                                            gaussian::theta_of(config.kind), config.duration());
  const double half = half_width_sd * std::sqrt(spread / 2.0);
  if (!(half > 0.0)) throw InputError("bin grid: a noiseless point release has no extent to bin");
  return {y - half, y + half, bins};
}

BinnedEstimate empirical_retrodiction_entropy(const Ensemble& ensemble, const std::vector<BinGrid>& initial_grids,
                                              const EstimatorOptions& options) {
  if (initial_grids.size() != ensemble.d) {
    throw InputError("estimator: need one initial grid per dimension (" + std::to_string(ensemble.d) + ")");
  }
  if (options.final_bins == 0) throw InputError("estimator: need at least one final bin");
  if (ensemble.n_trials == 0) throw InputError("estimator: empty ensemble");

  BinnedEstimate out;
  out.resolution_floor = ensemble.noiseless;
  std::vector<BinnedPairs> pairs(ensemble.d);
  std::vector<std::size_t> all(ensemble.n_trials);
  std::iota(all.begin(), all.end(), std::size_t{0});

  for (std::size_t a = 0; a < ensemble.d; ++a) {
    const auto& grid = initial_grids[a];
    if (grid.bins == 0 || !(grid.hi > grid.lo)) throw InputError("estimator: degenerate initial grid");
    std::vector<double> means(ensemble.n_trials);
    std::size_t inside = 0;
    for (std::size_t k = 0; k < ensemble.n_trials; ++k) {
      means[k] = ensemble.final_mean(k, a);
      if (grid.contains(ensemble.initial_at(k, a))) ++inside;
    }
    const double coverage = static_cast<double>(inside) / static_cast<double>(ensemble.n_trials);
    if (coverage < kMinInitialCoverage) {
      throw InputError("estimator: initial grid covers only " + std::to_string(100.0 * coverage) +
                       "% of the releases in dimension " + std::to_string(a));
    }
    const auto [mn, mx] = std::minmax_element(means.begin(), means.end());
    double lo = *mn;
    double hi = *mx;
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
    const BinGrid final_grid{lo, hi, options.final_bins};

    auto& p = pairs[a];
    p.n_initial = grid.bins;
    p.n_final = final_grid.bins;
    p.initial.resize(ensemble.n_trials);
    p.final.resize(ensemble.n_trials);
    for (std::size_t k = 0; k < ensemble.n_trials; ++k) {
      p.initial[k] = static_cast<std::uint32_t>(grid.locate(ensemble.initial_at(k, a)));
      p.final[k] = static_cast<std::uint32_t>(final_grid.locate(means[k]));
    }

    const auto counts = count(p, all);
    std::size_t empty = 0;
    auto [kernel, mass] = kernel_from(counts, p.n_initial, p.n_final, empty);
    const std::size_t occupied = p.n_initial - empty;
    if (occupied < kMinOccupiedBins) {
      throw UnreliableEstimate("estimator: only " + std::to_string(occupied) + " occupied initial bins in dimension " +
                               std::to_string(a) + " (need " + std::to_string(kMinOccupiedBins) + ")");
    }
    const double sr_discrete = core::average_retrodiction_entropy(kernel, mass);
    out.dims.push_back(DimensionEstimate{grid, final_grid, std::move(kernel), std::move(mass), empty, occupied, coverage,
                                         sr_discrete, sr_discrete + std::log(grid.width())});
    out.sr_estimate += out.dims.back().sr;
  }

  out.resamples = options.resamples;
  if (options.resamples == 0) return out;
  std::vector<double> boot(options.resamples, 0.0);
  parallel_for(options.resamples, options.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> picks(ensemble.n_trials);
    for (std::size_t r = begin; r < end; ++r) {
      auto engine = make_stream(options.seed, {0xb007, r});
      std::uniform_int_distribution<std::size_t> pick(0, ensemble.n_trials - 1);
      for (auto& k : picks) k = pick(engine);
      double total = 0.0;
      for (std::size_t a = 0; a < ensemble.d; ++a) {
        total += discrete_sr(count(pairs[a], picks), pairs[a].n_initial, pairs[a].n_final) +
                 std::log(initial_grids[a].width());
      }
      boot[r] = total;
    }
  });
  const double mean = std::accumulate(boot.begin(), boot.end(), 0.0) / static_cast<double>(boot.size());
  double ss = 0.0;
  for (double b : boot) ss += (b - mean) * (b - mean);
  out.standard_error = boot.size() > 1 ? std::sqrt(ss / static_cast<double>(boot.size() - 1)) : 0.0;
  std::sort(boot.begin(), boot.end());
  auto percentile = [&boot](double q) {
    const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(boot.size() - 1) + 0.5));
    return boot[std::min(idx, boot.size() - 1)];
  };
  out.ci_low = percentile(0.025);
  out.ci_high = percentile(0.975);
  return out;
}

}  // namespace retrodict::langevin
