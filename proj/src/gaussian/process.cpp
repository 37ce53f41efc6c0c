#include "retrodict/gaussian/process.hpp"

#include <algorithm>
#include <cmath>

#include "retrodict/errors.hpp"

namespace retrodict::gaussian {

std::size_t dimension(const ProcessKind& kind) { return diffusion_of(kind).size(); }

std::string kind_name(const ProcessKind& kind) {
  return std::holds_alternative<Wiener>(kind) ? "wiener" : "ou";
}

double theta_of(const ProcessKind& kind) {
  if (const auto* ou = std::get_if<OrnsteinUhlenbeck>(&kind)) return ou->theta;
  return 0.0;
}

const std::vector<double>& diffusion_of(const ProcessKind& kind) {
  return std::visit([](const auto& k) -> const std::vector<double>& { return k.diffusion; }, kind);
}

bool uses_wiener_formulas(const ProcessKind& kind) { return std::abs(theta_of(kind)) < kThetaDispatchThreshold; }

double wiener_spread(double diffusion, double t) { return 4.0 * diffusion * t; }

double ou_spread(double diffusion, double theta, double t) {
  if (std::abs(theta) < kThetaDispatchThreshold) return wiener_spread(diffusion, t);
  return -2.0 * diffusion * std::expm1(-2.0 * theta * t) / theta;
}

double log_expm1(double x) {
  if (!(x > 0.0)) throw DomainError("log_expm1 needs x > 0");
  if (x > 30.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

double log_ou_spread(double diffusion, double theta, double t) {
  if (std::abs(theta) < kThetaDispatchThreshold) return std::log(wiener_spread(diffusion, t));
  if (theta > 0.0) return std::log(2.0 * diffusion / theta) + std::log(-std::expm1(-2.0 * theta * t));
  return std::log(2.0 * diffusion / -theta) + log_expm1(-2.0 * theta * t);
}

double ou_contraction(double theta, double t) { return std::exp(-theta * t); }

GaussianProcessSpec GaussianProcessSpec::from_kind(const ProcessKind& kind, std::vector<double> sigma,
                                                   std::size_t n_particles) {
  GaussianProcessSpec spec;
  spec.d = dimension(kind);
  spec.n_particles = n_particles;
  spec.sigma = std::move(sigma);
  spec.kind = kind;
  const auto diffusion = diffusion_of(kind);
  const double theta = theta_of(kind);
  if (std::holds_alternative<Wiener>(kind)) {
    spec.lambda_fn = [](std::size_t, double) { return 1.0; };
    spec.spread_fn = [diffusion](std::size_t dim, double t) { return wiener_spread(diffusion.at(dim), t); };
    spec.log_lambda_fn = [](std::size_t, double) { return 0.0; };
    spec.log_spread_fn = [diffusion](std::size_t dim, double t) { return std::log(wiener_spread(diffusion.at(dim), t)); };
  } else {
    spec.lambda_fn = [theta](std::size_t, double t) { return ou_contraction(theta, t); };
    spec.spread_fn = [diffusion, theta](std::size_t dim, double t) { return ou_spread(diffusion.at(dim), theta, t); };
    spec.log_lambda_fn = [theta](std::size_t, double t) { return -theta * t; };
    spec.log_spread_fn = [diffusion, theta](std::size_t dim, double t) {
      return log_ou_spread(diffusion.at(dim), theta, t);
    };
  }
  spec.validate();
  return spec;
}

void GaussianProcessSpec::validate() const {
  if (d == 0) throw InputError("gaussian spec: dimension must be positive");
  if (n_particles == 0) throw InputError("gaussian spec: particle count must be positive");
  if (sigma.size() != d) {
    throw InputError("gaussian spec: expected " + std::to_string(d) + " prior widths, got " +
                     std::to_string(sigma.size()));
  }
  for (double s : sigma) {
    if (!(s > 0.0)) throw InputError("gaussian spec: prior widths must be positive or inf");
  }
  if (!lambda_fn || !spread_fn) throw InputError("gaussian spec: lambda and spread functions are required");
  if (kind) {
    for (double D : diffusion_of(*kind)) {
      if (!(D > 0.0) || !std::isfinite(D)) throw InputError("gaussian spec: diffusion constants must be positive");
    }
    if (!std::isfinite(theta_of(*kind))) throw InputError("gaussian spec: theta must be finite");
  }
}

bool GaussianProcessSpec::has_uniform_prior() const {
  return std::any_of(sigma.begin(), sigma.end(), [](double s) { return std::isinf(s); });
}

double GaussianProcessSpec::log_lambda(std::size_t dim, double t) const {
  if (log_lambda_fn) return log_lambda_fn(dim, t);
  const double lambda = std::abs(lambda_fn(dim, t));
  return lambda > 0.0 ? std::log(lambda) : -std::numeric_limits<double>::infinity();
}

double GaussianProcessSpec::log_spread(std::size_t dim, double t) const {
  if (log_spread_fn) return log_spread_fn(dim, t);
  const double D = spread_fn(dim, t);
  if (!(D > 0.0)) throw DomainError("gaussian spread D(t) must be positive for t > 0");
  return std::log(D);
}

}  // namespace retrodict::gaussian
