#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace retrodict::gaussian {

inline constexpr double kUniformPrior = std::numeric_limits<double>::infinity();

/// Below this |theta| an Ornstein-Uhlenbeck process is evaluated with the
/// Wiener formulas; 1 - exp(-2 theta t) loses all precision near zero.
inline constexpr double kThetaDispatchThreshold = 1e-9;

/// Free diffusion with one diffusion constant per dimension.
struct Wiener {
  std::vector<double> diffusion;
};

/// Diffusion in the quadratic potential theta x^2. theta > 0 traps,
/// theta < 0 disperses.
struct OrnsteinUhlenbeck {
  std::vector<double> diffusion;
  double theta = 0.0;
};

using ProcessKind = std::variant<Wiener, OrnsteinUhlenbeck>;

std::size_t dimension(const ProcessKind& kind);
std::string kind_name(const ProcessKind& kind);
/// theta of an OU process, 0 for Wiener.
double theta_of(const ProcessKind& kind);
const std::vector<double>& diffusion_of(const ProcessKind& kind);
bool uses_wiener_formulas(const ProcessKind& kind);

/// Spread D(t) of the transition density exp[-(x - lambda y)^2 / D] / sqrt(pi D).
/// The variance of one coordinate is D(t) / 2.
double wiener_spread(double diffusion, double t);
double ou_spread(double diffusion, double theta, double t);

/// log D(t) of the OU spread, finite where D(t) itself overflows.
double log_ou_spread(double diffusion, double theta, double t);

/// log(exp(x) - 1) for x > 0 without overflow.
double log_expm1(double x);

/// Contraction factor lambda(t) of the mean: 1 for Wiener, exp(-theta t) for OU.
double ou_contraction(double theta, double t);

/// N independent particles in d dimensions, all released at one point y drawn
/// from a product Gaussian prior of widths sigma (kUniformPrior for the flat
/// limit). Each dimension alpha has its own contraction and spread.
struct GaussianProcessSpec {
  std::size_t d = 1;
  std::size_t n_particles = 1;
  std::vector<double> sigma;
  std::function<double(std::size_t dim, double t)> lambda_fn;
  std::function<double(std::size_t dim, double t)> spread_fn;
  /// Optional log-domain versions of the two functions; named processes set
  /// them so entropies stay finite when D(t) or lambda(t) overflow.
  std::function<double(std::size_t dim, double t)> log_lambda_fn;
  std::function<double(std::size_t dim, double t)> log_spread_fn;
  /// Set when built from a named process.
  std::optional<ProcessKind> kind;

  static GaussianProcessSpec from_kind(const ProcessKind& kind, std::vector<double> sigma, std::size_t n_particles);

  /// Throws InputError for an inconsistent spec.
  void validate() const;
  bool has_uniform_prior() const;
  double log_lambda(std::size_t dim, double t) const;
  double log_spread(std::size_t dim, double t) const;
};

}  // namespace retrodict::gaussian
