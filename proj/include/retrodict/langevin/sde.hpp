#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "retrodict/gaussian/process.hpp"

namespace retrodict::langevin {

struct GaussianPrior {
  double sigma = 1.0;
  double mean = 0.0;
};

struct PointMassPrior {
  double y = 0.0;
};

using InitialPrior = std::variant<GaussianPrior, PointMassPrior>;

/// Largest dt * |theta| accepted for Euler-Maruyama.
inline constexpr double kMaxStepContraction = 0.01;

/// Overdamped Langevin dynamics dX = -theta X dt + sqrt(2 D) dW per
/// coordinate. Its exact transition has mean y exp(-theta t) and variance
/// D (1 - exp(-2 theta t)) / theta, i.e. half the spread D(t) of the
/// Gaussian family. Diffusion constants may be zero (noiseless runs).
struct SdeConfig {
  gaussian::ProcessKind kind = gaussian::Wiener{{1.0}};
  double dt = 0.01;
  std::size_t n_steps = 100;
  std::size_t n_particles = 1;
  std::size_t n_trials = 1000;
  std::uint64_t seed = 0;
  InitialPrior prior = GaussianPrior{};

  /// Throws InputError on non-positive dt, dt |theta| > kMaxStepContraction,
  /// negative diffusion or empty ensembles.
  void validate() const;
  double duration() const noexcept { return dt * static_cast<double>(n_steps); }
  std::size_t dimension() const { return gaussian::dimension(kind); }
  bool noiseless() const;
};

/// n_trials releases of n_particles particles in d dimensions. All particles
/// of one trial start from the same point.
struct Ensemble {
  std::size_t n_trials = 0;
  std::size_t n_particles = 0;
  std::size_t d = 0;
  double elapsed = 0.0;
  bool noiseless = false;
  std::vector<double> initial;          // [trial][dim]
  std::vector<double> final_positions;  // [trial][particle][dim]

  double initial_at(std::size_t trial, std::size_t dim) const { return initial[trial * d + dim]; }
  double final_at(std::size_t trial, std::size_t particle, std::size_t dim) const {
    return final_positions[(trial * n_particles + particle) * d + dim];
  }
  /// Average final coordinate of the particles of one trial.
  double final_mean(std::size_t trial, std::size_t dim) const;
};

/// Euler-Maruyama integration. Trial k draws its release point and its noise
/// from streams derived from (seed, k), so output does not depend on
/// `threads`.
Ensemble simulate(const SdeConfig& config, unsigned threads = 1);

/// Samples final positions from the exact Gaussian transition law. Release
/// points match simulate() trial by trial; the noise streams differ.
Ensemble exact_sampler(const SdeConfig& config, unsigned threads = 1);

}  // namespace retrodict::langevin
