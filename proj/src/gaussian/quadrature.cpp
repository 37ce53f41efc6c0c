#include "retrodict/gaussian/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "retrodict/errors.hpp"

namespace retrodict::gaussian {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t odd_points(std::size_t points) {
  if (points < 3) points = 3;
  return points % 2 == 1 ? points : points + 1;
}

double simpson_weight(std::size_t i, std::size_t n) {
  if (i == 0 || i + 1 == n) return 1.0;
  return i % 2 == 1 ? 4.0 : 2.0;
}

// -p log p with the 0 log 0 = 0 convention, given log p.
double entropy_density(double log_p) {
  if (std::isinf(log_p)) return 0.0;
  return -std::exp(log_p) * log_p;
}

double gaussian_1d_entropy(double variance, const QuadratureOptions& opt) {
  const double sd = std::sqrt(variance);
  const double log_norm = -0.5 * std::log(2.0 * kPi * variance);
  return simpson([&](double x) { return entropy_density(log_norm - x * x / (2.0 * variance)); },
                 -opt.half_width_sd * sd, opt.half_width_sd * sd, opt.points);
}

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b, std::size_t points) {
  const std::size_t n = odd_points(points);
  const double h = (b - a) / static_cast<double>(n - 1);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += simpson_weight(i, n) * f(a + h * static_cast<double>(i));
  return total * h / 3.0;
}

double quadrature_transition_entropy(const GaussianProcessSpec& spec, double t, QuadratureOptions opt) {
  if (!(t > 0.0)) throw DomainError("quadrature: time must be positive");
  double total = 0.0;
  for (std::size_t a = 0; a < spec.d; ++a) {
    // Particles are independent, so the N-particle entropy is N copies of one.
    total += static_cast<double>(spec.n_particles) * gaussian_1d_entropy(spec.spread_fn(a, t) / 2.0, opt);
  }
  return total;
}

double quadrature_prior_entropy(const GaussianProcessSpec& spec, QuadratureOptions opt) {
  double total = 0.0;
  for (double s : spec.sigma) {
    if (std::isinf(s)) throw DomainError("quadrature: a uniform prior has no finite entropy");
    total += gaussian_1d_entropy(s * s, opt);
  }
  return total;
}

double quadrature_observation_entropy(const GaussianProcessSpec& spec, double t, QuadratureOptions opt) {
  if (!(t > 0.0)) throw DomainError("quadrature: time must be positive");
  if (spec.n_particles > 2) throw InputError("quadrature: observation entropy supports at most two particles");
  if (spec.has_uniform_prior()) throw DomainError("quadrature: a uniform prior has no finite observation entropy");
  double total = 0.0;
  for (std::size_t a = 0; a < spec.d; ++a) {
    const double noise = spec.spread_fn(a, t) / 2.0;
    const double lambda = spec.lambda_fn(a, t);
    const double shared = lambda * lambda * spec.sigma[a] * spec.sigma[a];
    // x_i = lambda y + noise_i, so cov(x_i, x_j) = shared + noise [i == j].
    if (spec.n_particles == 1) {
      total += gaussian_1d_entropy(noise + shared, opt);
      continue;
    }
    const double c11 = noise + shared;
    const double c12 = shared;
    const double det = c11 * c11 - c12 * c12;
    const double log_norm = -std::log(2.0 * kPi) - 0.5 * std::log(det);
    auto log_density = [&](double x1, double x2) {
      const double quad = (c11 * x1 * x1 - 2.0 * c12 * x1 * x2 + c11 * x2 * x2) / det;
      return log_norm - 0.5 * quad;
    };
    // Integrate along the principal axes (1,1)/sqrt2 and (1,-1)/sqrt2.
    const double sd_sum = std::sqrt(noise + 2.0 * shared);
    const double sd_diff = std::sqrt(noise);
    const std::size_t n = odd_points(opt.points);
    const double hu = 2.0 * opt.half_width_sd * sd_sum / static_cast<double>(n - 1);
    const double hv = 2.0 * opt.half_width_sd * sd_diff / static_cast<double>(n - 1);
    double integral = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = -opt.half_width_sd * sd_sum + hu * static_cast<double>(i);
      double inner = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double v = -opt.half_width_sd * sd_diff + hv * static_cast<double>(j);
        inner += simpson_weight(j, n) * entropy_density(log_density((u + v) / std::numbers::sqrt2,
                                                                    (u - v) / std::numbers::sqrt2));
      }
      integral += simpson_weight(i, n) * inner;
    }
    total += integral * hu * hv / 9.0;
  }
  return total;
}

double quadrature_retrodiction_entropy(const GaussianProcessSpec& spec, double t, double observed,
                                       QuadratureOptions opt) {
  if (!(t > 0.0)) throw DomainError("quadrature: time must be positive");
  double total = 0.0;
  for (std::size_t a = 0; a < spec.d; ++a) {
    const double D = spec.spread_fn(a, t);
    const double lambda = spec.lambda_fn(a, t);
    const double s = spec.sigma[a];
    if (lambda == 0.0 && std::isinf(s)) throw DomainError("quadrature: posterior is not normalizable");
    // Unnormalized log posterior over the release point.
    auto log_post = [&](double y) {
      double f = std::isinf(s) ? 0.0 : -y * y / (2.0 * s * s);
      for (std::size_t i = 0; i < spec.n_particles; ++i) {
        const double x = observed + 0.1 * static_cast<double>(i);
        f -= (x - lambda * y) * (x - lambda * y) / D;
      }
      return f;
    };
    // The log posterior is quadratic; three evaluations locate it.
    const double curvature = -(log_post(1.0) - 2.0 * log_post(0.0) + log_post(-1.0));
    const double mode = (log_post(1.0) - log_post(-1.0)) / (2.0 * curvature);
    const double sd = 1.0 / std::sqrt(curvature);
    const double peak = log_post(mode);
    const double lo = mode - opt.half_width_sd * sd;
    const double hi = mode + opt.half_width_sd * sd;
    const double z = simpson([&](double y) { return std::exp(log_post(y) - peak); }, lo, hi, opt.points);
    const double log_z = std::log(z);
    total += simpson([&](double y) { return entropy_density(log_post(y) - peak - log_z); }, lo, hi, opt.points);
  }
  return total;
}

}  // namespace retrodict::gaussian
