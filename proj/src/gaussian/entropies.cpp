#include "retrodict/gaussian/entropies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "retrodict/errors.hpp"

namespace retrodict::gaussian {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_time(double t, const char* what) {
  if (!(t > 0.0)) throw DomainError(std::string(what) + ": time must be positive");
}

// log(e^a + e^b) with -inf handled.
double log_add(double a, double b) {
  if (std::isinf(a) && a < 0.0) return b;
  if (std::isinf(b) && b < 0.0) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log of D / (2 N sigma^2), the prior's contribution to the posterior precision.
double log_prior_precision(double log_spread, double n, double sigma) {
  return log_spread - std::log(2.0 * n * sigma * sigma);
}

void require_isotropic_sizes(const std::vector<double>& diffusion, const std::vector<double>& sigma) {
  if (diffusion.size() != sigma.size() || diffusion.empty()) {
    throw InputError("need one diffusion constant and one prior width per dimension");
  }
}

}  // namespace

double transition_entropy(const GaussianProcessSpec& spec, double t) {
  require_positive_time(t, "transition entropy");
  const double n = static_cast<double>(spec.n_particles);
  double total = 0.0;
  for (std::size_t a = 0; a < spec.d; ++a) total += 0.5 * n * (std::log(kPi * kE) + spec.log_spread(a, t));
  return total;
}

double prior_entropy(const GaussianProcessSpec& spec) {
  double total = 0.0;
  for (double s : spec.sigma) {
    if (std::isinf(s)) return kInf;
    total += 0.5 * std::log(2.0 * kPi * kE * s * s);
  }
  return total;
}

double observation_entropy(const GaussianProcessSpec& spec, double t) {
  require_positive_time(t, "observation entropy");
  if (spec.has_uniform_prior()) return kInf;
  const double n = static_cast<double>(spec.n_particles);
  double total = 0.0;
  for (std::size_t a = 0; a < spec.d; ++a) {
    const double log_d = spec.log_spread(a, t);
    const double s = spec.sigma[a];
    // lambda^2 / kappa folded into one term so lambda -> 0 stays finite.
    const double log_arg = std::log(2.0) + n * std::log(kPi) + std::log(n) + 2.0 * std::log(s) +
                           (n - 1.0) * log_d + log_add(2.0 * spec.log_lambda(a, t), log_prior_precision(log_d, n, s));
    total += 0.5 * log_arg + 0.5 * n;
  }
  return total;
}

double retrodiction_entropy(const GaussianProcessSpec& spec, double t) {
  require_positive_time(t, "retrodiction entropy");
  const double n = static_cast<double>(spec.n_particles);
  double total = 0.0;
  for (std::size_t a = 0; a < spec.d; ++a) {
    const double log_d = spec.log_spread(a, t);
    const double s = spec.sigma[a];
    const double log_lambda_sq = 2.0 * spec.log_lambda(a, t);
    const double log_precision = std::isinf(s) ? log_lambda_sq : log_add(log_lambda_sq, log_prior_precision(log_d, n, s));
    if (std::isinf(log_precision)) return kInf;
    total += 0.5 * (std::log(kPi * kE / n) + log_d - log_precision);
  }
  return total;
}

std::vector<double> kappa(const GaussianProcessSpec& spec, double t) {
  require_positive_time(t, "kappa");
  const double n = static_cast<double>(spec.n_particles);
  std::vector<double> out(spec.d, 1.0);
  for (std::size_t a = 0; a < spec.d; ++a) {
    const double s = spec.sigma[a];
    if (std::isinf(s)) continue;
    const double log_ratio = log_prior_precision(spec.log_spread(a, t), n, s) - 2.0 * spec.log_lambda(a, t);
    out[a] = 1.0 / (1.0 + std::exp(log_ratio));
  }
  return out;
}

double wiener_sr(const std::vector<double>& diffusion, const std::vector<double>& sigma, std::size_t n_particles,
                 double t) {
  require_positive_time(t, "wiener_sr");
  require_isotropic_sizes(diffusion, sigma);
  const double n = static_cast<double>(n_particles);
  double total = 0.0;
  for (std::size_t a = 0; a < diffusion.size(); ++a) {
    const double D = diffusion[a];
    const double s = sigma[a];
    if (std::isinf(s)) {
      total += 0.5 * std::log(4.0 * kPi * kE * D * t / n);
    } else {
      total += 0.5 * std::log(4.0 * kPi * kE * s * s * D * t / (2.0 * D * t + s * s * n));
    }
  }
  return total;
}

double wiener_sr(double diffusion, double sigma, std::size_t n_particles, std::size_t d, double t) {
  return wiener_sr(std::vector<double>(d, diffusion), std::vector<double>(d, sigma), n_particles, t);
}

double ou_sr(const std::vector<double>& diffusion, double theta, const std::vector<double>& sigma,
             std::size_t n_particles, double t) {
  require_positive_time(t, "ou_sr");
  require_isotropic_sizes(diffusion, sigma);
  if (std::abs(theta) < kThetaDispatchThreshold) return wiener_sr(diffusion, sigma, n_particles, t);
  const double n = static_cast<double>(n_particles);
  const double x = 2.0 * theta * t;
  double total = 0.0;
  for (std::size_t a = 0; a < diffusion.size(); ++a) {
    const double D = diffusion[a];
    const double s = sigma[a];
    double log_arg = 0.0;
    if (std::isinf(s)) {
      log_arg = theta > 0.0 ? std::log(2.0 * kPi * kE * D / (n * theta)) + log_expm1(x)
                            : std::log(2.0 * kPi * kE * D / n * (std::expm1(x) / theta));
    } else if (theta > 0.0) {
      const double grown = -std::expm1(-x) / theta;  // (1 - e^{-2 theta t}) / theta
      log_arg = std::log(2.0 * kPi * kE * s * s * D * grown / (s * s * n * std::exp(-x) + D * grown));
    } else {
      const double grown = std::expm1(x) / theta;  // (1 - e^{-2 |theta| t}) / |theta|
      log_arg = std::log(2.0 * kPi * kE * s * s * D * grown / (s * s * n + D * grown));
    }
    total += 0.5 * log_arg;
  }
  return total;
}

double ou_sr(double diffusion, double theta, double sigma, std::size_t n_particles, std::size_t d, double t) {
  return ou_sr(std::vector<double>(d, diffusion), theta, std::vector<double>(d, sigma), n_particles, t);
}

double ou_concave_limit(const std::vector<double>& diffusion, double theta, std::size_t n_particles) {
  if (!(theta < 0.0)) throw DomainError("the concave limit needs theta < 0");
  const double n = static_cast<double>(n_particles);
  double total = 0.0;
  for (double D : diffusion) total += 0.5 * std::log(2.0 * kPi * kE * D / (n * std::abs(theta)));
  return total;
}

double GaussianEntropies::identity_residual() const {
  if (std::isinf(s0)) return 0.0;
  return sr - (s_t_transition - (st_observation - s0));
}

GaussianEntropies gaussian_entropy_bundle(const GaussianProcessSpec& spec, double t) {
  spec.validate();
  GaussianEntropies out;
  out.s_t_transition = transition_entropy(spec, t);
  out.s0 = prior_entropy(spec);
  out.st_observation = observation_entropy(spec, t);
  out.sr = retrodiction_entropy(spec, t);
  out.kappa = kappa(spec, t);
  if (!(std::abs(out.identity_residual()) <= kGaussianIdentityTolerance)) {
    throw ConsistencyError("gaussian entropies: S_R != S_T - (S_t - S_0), residual " +
                           std::to_string(out.identity_residual()));
  }
  return out;
}

}  // namespace retrodict::gaussian
