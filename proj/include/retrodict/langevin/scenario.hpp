#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "retrodict/gaussian/process.hpp"

namespace retrodict::langevin {

/// Simulation scenario as read from a JSON file:
///   {"kind": "wiener"|"ou", "theta": 1, "D": 1, "sigma": 5 | null, "N": 1,
///    "d": 1, "t_grid": [...] | "t": 1, "dt": 0.01, "n_trials": 100000,
///    "bins": 128, "seed": 7}
/// A null sigma selects the uniform prior.
struct Scenario {
  std::string kind = "ou";
  double theta = 1.0;
  double diffusion = 1.0;
  double sigma = 5.0;
  std::size_t n_particles = 1;
  std::size_t d = 1;
  std::vector<double> t_grid{1.0};
  double dt = 0.01;
  std::size_t n_trials = 100000;
  std::size_t bins = 128;
  std::uint64_t seed = 0;

  gaussian::ProcessKind process() const;
  /// Throws InputError for unknown kinds, non-positive times and counts.
  void validate() const;
};

Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
/// Canonical JSON of the resolved scenario (17-digit numbers, null sigma for uniform).
std::string scenario_to_json(const Scenario& scenario);

struct ScenarioRow {
  double t = 0.0;
  double sr_analytic = 0.0;
  double sr_empirical = 0.0;
  double standard_error = 0.0;
  double s0 = 0.0;
  double st = 0.0;
  double avg_st = 0.0;
  /// Noiseless run: the empirical value is the grid-resolution floor.
  bool degenerate = false;

  /// |empirical - analytic| < 3 stderr + 0.05; always true for degenerate rows.
  bool agrees() const;
};

/// Closed-form entropies at every grid time plus, when `monte_carlo` is set,
/// the binned estimate from an Euler-Maruyama ensemble run to that time.
std::vector<ScenarioRow> run_scenario(const Scenario& scenario, unsigned threads = 1, bool monte_carlo = true);

enum class Figure { Fig1a, Fig1b, Fig2a, Fig2b };

/// Accepts "fig1a", "fig1b", "fig2a", "fig2b".
Figure parse_figure(std::string_view name);
std::string figure_name(Figure figure);

struct CurvePoint {
  double theta = 0.0;
  double sigma = 0.0;
  std::size_t n_particles = 0;
  double t = 0.0;
  double s0 = 0.0;
  double st = 0.0;
  double avg_st = 0.0;
  double sr = 0.0;
  double sr_empirical = 0.0;  // NaN unless an overlay was requested
  double standard_error = 0.0;
};

/// `points_per_decade` log-spaced times between lo and hi, inclusive.
std::vector<double> log_time_grid(double lo, double hi, std::size_t points_per_decade);

/// Analytic curves of the published scenarios (D = 1):
///   fig1a: five particles, uniform prior, theta in {-1, -0.5, 0, 0.5, 1}, t in [1e-3, 1e3]
///   fig1b: as fig1a with a Gaussian prior of width 5
///   fig2a: two particles, theta = 1, width 5, t in [1e-2, 1e2]
///   fig2b: five particles, width 5, theta in [-2, 2] at t in {1, 10, 100, 1000}
/// With overlay_trials > 0, finite-prior points with t <= overlay_max_t also
/// carry a binned estimate from the exact sampler.
std::vector<CurvePoint> figure_curves(Figure figure, std::size_t points_per_decade = 10,
                                      std::size_t overlay_trials = 0, std::uint64_t seed = 0,
                                      unsigned threads = 1, double overlay_max_t = 10.0);

}  // namespace retrodict::langevin
