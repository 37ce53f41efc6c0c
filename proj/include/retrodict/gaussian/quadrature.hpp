#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "retrodict/gaussian/process.hpp"

namespace retrodict::gaussian {

// Numerical oracles: each entropy is obtained by integrating -p log p on a
// grid truncated at +-8 standard deviations, independent of the closed forms.

/// Composite Simpson rule on [a, b] with `points` samples (rounded up to odd).
double simpson(const std::function<double(double)>& f, double a, double b, std::size_t points);

struct QuadratureOptions {
  std::size_t points = 2001;  // per axis
  double half_width_sd = 8.0;
};

double quadrature_transition_entropy(const GaussianProcessSpec& spec, double t, QuadratureOptions opt = {});
double quadrature_prior_entropy(const GaussianProcessSpec& spec, QuadratureOptions opt = {});
/// Integrates over the joint density of the N final positions; N <= 2.
double quadrature_observation_entropy(const GaussianProcessSpec& spec, double t, QuadratureOptions opt = {});
/// Normalizes prior x likelihood numerically at the observation where every
/// particle sits at `observed` in every dimension.
double quadrature_retrodiction_entropy(const GaussianProcessSpec& spec, double t, double observed = 0.3,
                                       QuadratureOptions opt = {});

}  // namespace retrodict::gaussian
