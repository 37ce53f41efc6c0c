#include "retrodict/langevin/sde.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "retrodict/errors.hpp"
#include "retrodict/parallel.hpp"
#include "retrodict/random.hpp"

namespace retrodict::langevin {

namespace {

// Stream tags under (seed, tag, trial).
constexpr std::uint64_t kReleaseStream = 0;
constexpr std::uint64_t kEulerStream = 1;
constexpr std::uint64_t kExactStream = 2;

Ensemble empty_ensemble(const SdeConfig& config) {
  Ensemble e;
  e.n_trials = config.n_trials;
  e.n_particles = config.n_particles;
  e.d = config.dimension();
  e.elapsed = config.duration();
  e.noiseless = config.noiseless();
  e.initial.resize(e.n_trials * e.d);
  e.final_positions.resize(e.n_trials * e.n_particles * e.d);
  return e;
}

void draw_release(const SdeConfig& config, std::size_t trial, std::span<double> out) {
  if (const auto* point = std::get_if<PointMassPrior>(&config.prior)) {
    std::fill(out.begin(), out.end(), point->y);
    return;
  }
  const auto& g = std::get<GaussianPrior>(config.prior);
  auto engine = make_stream(config.seed, {kReleaseStream, trial});
  std::normal_distribution<double> normal(g.mean, g.sigma);
  for (auto& y : out) y = normal(engine);
}

}  // namespace

void SdeConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("sde: dt must be positive");
  if (n_steps == 0) throw InputError("sde: need at least one step");
  if (n_particles == 0 || n_trials == 0) throw InputError("sde: particle and trial counts must be positive");
  const auto& diffusion = gaussian::diffusion_of(kind);
  if (diffusion.empty()) throw InputError("sde: need at least one dimension");
  for (double D : diffusion) {
    if (!(D >= 0.0) || !std::isfinite(D)) throw InputError("sde: diffusion constants must be finite and >= 0");
  }
  const double theta = gaussian::theta_of(kind);
  if (!std::isfinite(theta)) throw InputError("sde: theta must be finite");
  if (dt * std::abs(theta) > kMaxStepContraction) {
    throw InputError("sde: dt * |theta| = " + std::to_string(dt * std::abs(theta)) + " exceeds " +
                     std::to_string(kMaxStepContraction) + "; reduce dt");
  }
  if (const auto* g = std::get_if<GaussianPrior>(&prior)) {
    if (!(g->sigma > 0.0) || !std::isfinite(g->sigma)) {
      throw InputError("sde: sampling needs a finite positive prior width");
    }
  }
}

bool SdeConfig::noiseless() const {
  const auto& diffusion = gaussian::diffusion_of(kind);
  return std::all_of(diffusion.begin(), diffusion.end(), [](double D) { return D == 0.0; });
}

double Ensemble::final_mean(std::size_t trial, std::size_t dim) const {
  double sum = 0.0;
  for (std::size_t p = 0; p < n_particles; ++p) sum += final_at(trial, p, dim);
  return sum / static_cast<double>(n_particles);
}

Ensemble simulate(const SdeConfig& config, unsigned threads) {
  config.validate();
  auto e = empty_ensemble(config);
  const double theta = gaussian::theta_of(config.kind);
  const auto& diffusion = gaussian::diffusion_of(config.kind);
  const double decay = 1.0 - theta * config.dt;
  std::vector<double> kick(e.d);
  for (std::size_t a = 0; a < e.d; ++a) kick[a] = std::sqrt(2.0 * diffusion[a] * config.dt);

  parallel_for(e.n_trials, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t trial = begin; trial < end; ++trial) {
      draw_release(config, trial, std::span<double>(e.initial).subspan(trial * e.d, e.d));
      // Fresh distribution per trial: it caches a spare variate between calls.
      std::normal_distribution<double> normal(0.0, 1.0);
      auto engine = make_stream(config.seed, {kEulerStream, trial});
      for (std::size_t p = 0; p < e.n_particles; ++p) {
        for (std::size_t a = 0; a < e.d; ++a) {
          double x = e.initial_at(trial, a);
          if (kick[a] == 0.0) {
            for (std::size_t s = 0; s < config.n_steps; ++s) x *= decay;
          } else {
            for (std::size_t s = 0; s < config.n_steps; ++s) x = decay * x + kick[a] * normal(engine);
          }
          e.final_positions[(trial * e.n_particles + p) * e.d + a] = x;
        }
      }
    }
  });
  return e;
}

Ensemble exact_sampler(const SdeConfig& config, unsigned threads) {
  config.validate();
  auto e = empty_ensemble(config);
  const double theta = gaussian::theta_of(config.kind);
  const auto& diffusion = gaussian::diffusion_of(config.kind);
  const double t = config.duration();
  const double lambda = gaussian::ou_contraction(theta, t);
  std::vector<double> sd(e.d);
  for (std::size_t a = 0; a < e.d; ++a) sd[a] = std::sqrt(gaussian::ou_spread(diffusion[a], theta, t) / 2.0);

  parallel_for(e.n_trials, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t trial = begin; trial < end; ++trial) {
      draw_release(config, trial, std::span<double>(e.initial).subspan(trial * e.d, e.d));
      // Fresh distribution per trial: it caches a spare variate between calls.
      std::normal_distribution<double> normal(0.0, 1.0);
      auto engine = make_stream(config.seed, {kExactStream, trial});
      for (std::size_t p = 0; p < e.n_particles; ++p) {
        for (std::size_t a = 0; a < e.d; ++a) {
          e.final_positions[(trial * e.n_particles + p) * e.d + a] =
              lambda * e.initial_at(trial, a) + sd[a] * normal(engine);
        }
      }
    }
  });
  return e;
}

}  // namespace retrodict::langevin
