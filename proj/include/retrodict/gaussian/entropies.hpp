#pragma once

#include <cstddef>
#include <vector>

#include "retrodict/gaussian/process.hpp"

namespace retrodict::gaussian {

// Differential entropies in nats. Any t <= 0 throws DomainError.

/// Entropy of the N-particle transition density, sum over dimensions of
/// (N/2) log(pi e D(t)). Independent of the release point.
double transition_entropy(const GaussianProcessSpec& spec, double t);

/// Entropy of the product Gaussian prior; +inf if any width is infinite.
double prior_entropy(const GaussianProcessSpec& spec);

/// Entropy of the joint distribution of the N final positions; +inf under a
/// uniform prior.
double observation_entropy(const GaussianProcessSpec& spec, double t);

/// Entropy of the posterior over the release point. Finite for a uniform
/// prior unless lambda(t) = 0 there, which gives +inf.
double retrodiction_entropy(const GaussianProcessSpec& spec, double t);

/// kappa = 1 / (1 + D / (2 N sigma^2 lambda^2)) per dimension; 1 for a uniform prior.
std::vector<double> kappa(const GaussianProcessSpec& spec, double t);

/// Retrodiction entropy of free diffusion, isotropic or per dimension.
double wiener_sr(const std::vector<double>& diffusion, const std::vector<double>& sigma, std::size_t n_particles,
                 double t);
double wiener_sr(double diffusion, double sigma, std::size_t n_particles, std::size_t d, double t);

/// Retrodiction entropy of the OU process, written to stay finite for large
/// |theta| t. |theta| below kThetaDispatchThreshold uses wiener_sr.
double ou_sr(const std::vector<double>& diffusion, double theta, const std::vector<double>& sigma,
             std::size_t n_particles, double t);
double ou_sr(double diffusion, double theta, double sigma, std::size_t n_particles, std::size_t d, double t);

/// Long-time limit of the uniform-prior OU retrodiction entropy for theta < 0.
double ou_concave_limit(const std::vector<double>& diffusion, double theta, std::size_t n_particles);

struct GaussianEntropies {
  double s_t_transition = 0.0;
  double s0 = 0.0;
  double st_observation = 0.0;
  double sr = 0.0;
  std::vector<double> kappa;

  /// sr - (s_t_transition - (st_observation - s0)); 0 when s0 is infinite.
  double identity_residual() const;
};

inline constexpr double kGaussianIdentityTolerance = 1e-10;

/// Evaluates the four entropies independently and throws ConsistencyError
/// when the finite-prior identity residual exceeds kGaussianIdentityTolerance.
GaussianEntropies gaussian_entropy_bundle(const GaussianProcessSpec& spec, double t);

}  // namespace retrodict::gaussian
