#include "retrodict/langevin/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "retrodict/errors.hpp"
#include "retrodict/format.hpp"
#include "retrodict/gaussian/entropies.hpp"
#include "retrodict/json_parse.hpp"
#include "retrodict/langevin/estimate.hpp"
#include "retrodict/random.hpp"

namespace retrodict::langevin {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

double number_field(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number()) throw InputError(std::string("scenario: '") + key + "' must be a number");
  return doc[key].get<double>();
}

std::size_t count_field(const json& doc, const char* key, std::size_t fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number_unsigned()) throw InputError(std::string("scenario: '") + key + "' must be a positive integer");
  return doc[key].get<std::size_t>();
}

struct Analytic {
  double s0 = 0.0;
  double st = 0.0;
  double avg_st = 0.0;
  double sr = 0.0;
};

double stable_sr(const gaussian::ProcessKind& kind, const std::vector<double>& sigma, std::size_t n, double t) {
  const auto& diffusion = gaussian::diffusion_of(kind);
  if (gaussian::uses_wiener_formulas(kind)) return gaussian::wiener_sr(diffusion, sigma, n, t);
  return gaussian::ou_sr(diffusion, gaussian::theta_of(kind), sigma, n, t);
}

Analytic analytic_at(const gaussian::ProcessKind& kind, const std::vector<double>& sigma, std::size_t n, double t) {
  const auto spec = gaussian::GaussianProcessSpec::from_kind(kind, sigma, n);
  const auto bundle = gaussian::gaussian_entropy_bundle(spec, t);
  return {bundle.s0, bundle.st_observation, bundle.s_t_transition, stable_sr(kind, sigma, n, t)};
}

// Noiseless dynamics: x = lambda y exactly.
Analytic noiseless_at(const Scenario& s, double t) {
  Analytic a;
  const double log_lambda = -gaussian::theta_of(s.process()) * t;
  const double dims = static_cast<double>(s.d);
  a.s0 = std::isinf(s.sigma) ? kInf : dims * 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * s.sigma * s.sigma);
  a.st = s.n_particles == 1 ? a.s0 + dims * log_lambda : -kInf;
  a.avg_st = -kInf;
  a.sr = -kInf;
  return a;
}

}  // namespace

gaussian::ProcessKind Scenario::process() const {
  std::vector<double> diffusions(d, diffusion);
  if (kind == "wiener") return gaussian::Wiener{diffusions};
  return gaussian::OrnsteinUhlenbeck{diffusions, theta};
}

void Scenario::validate() const {
  if (kind != "wiener" && kind != "ou") throw InputError("scenario: kind must be 'wiener' or 'ou', got '" + kind + "'");
  if (!std::isfinite(theta)) throw InputError("scenario: theta must be finite");
  if (!(diffusion >= 0.0) || !std::isfinite(diffusion)) throw InputError("scenario: D must be finite and >= 0");
  if (!(sigma > 0.0)) throw InputError("scenario: sigma must be positive or null");
  if (n_particles == 0 || d == 0) throw InputError("scenario: N and d must be positive");
  if (t_grid.empty()) throw InputError("scenario: need at least one time");
  for (double t : t_grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InputError("scenario: times must be positive");
  }
  if (!(dt > 0.0)) throw InputError("scenario: dt must be positive");
  if (n_trials == 0 || bins == 0) throw InputError("scenario: n_trials and bins must be positive");
}

Scenario parse_scenario(std::string_view json_text) {
  const auto doc = parse_json(json_text);
  if (!doc.is_object()) throw ParseError("scenario must be a JSON object", 1, 1);
  Scenario s;
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) throw InputError("scenario: 'kind' must be a string");
    s.kind = doc["kind"].get<std::string>();
  }
  s.theta = number_field(doc, "theta", s.kind == "wiener" ? 0.0 : s.theta);
  s.diffusion = number_field(doc, "D", s.diffusion);
  if (doc.contains("sigma")) s.sigma = doc["sigma"].is_null() ? kInf : number_field(doc, "sigma", s.sigma);
  s.n_particles = count_field(doc, "N", s.n_particles);
  s.d = count_field(doc, "d", s.d);
  if (doc.contains("t_grid")) {
    if (!doc["t_grid"].is_array()) throw InputError("scenario: 't_grid' must be an array");
    s.t_grid.clear();
    for (const auto& v : doc["t_grid"]) {
      if (!v.is_number()) throw InputError("scenario: 't_grid' must hold numbers");
      s.t_grid.push_back(v.get<double>());
    }
  } else if (doc.contains("t")) {
    s.t_grid = {number_field(doc, "t", 1.0)};
  }
  s.dt = number_field(doc, "dt", s.dt);
  s.n_trials = count_field(doc, "n_trials", s.n_trials);
  s.bins = count_field(doc, "bins", s.bins);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw InputError("scenario: 'seed' must be a non-negative integer");
    s.seed = doc["seed"].get<std::uint64_t>();
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string scenario_to_json(const Scenario& s) {
  std::ostringstream out;
  out << "{\"kind\": \"" << s.kind << "\", \"theta\": " << format_number(s.theta)
      << ", \"D\": " << format_number(s.diffusion)
      << ", \"sigma\": " << (std::isinf(s.sigma) ? std::string("null") : format_number(s.sigma))
      << ", \"N\": " << s.n_particles << ", \"d\": " << s.d << ", \"t_grid\": [";
  for (std::size_t i = 0; i < s.t_grid.size(); ++i) out << (i ? ", " : "") << format_number(s.t_grid[i]);
  out << "], \"dt\": " << format_number(s.dt) << ", \"n_trials\": " << s.n_trials << ", \"bins\": " << s.bins
      << ", \"seed\": " << s.seed << "}";
  return out.str();
}

bool ScenarioRow::agrees() const {
  if (degenerate) return true;
  return std::abs(sr_empirical - sr_analytic) < 3.0 * standard_error + 0.05;
}

std::vector<ScenarioRow> run_scenario(const Scenario& scenario, unsigned threads, bool monte_carlo) {
  scenario.validate();
  if (monte_carlo && std::isinf(scenario.sigma)) {
    throw InputError("scenario: Monte-Carlo runs need a finite sigma (a uniform prior cannot be sampled)");
  }
  const auto kind = scenario.process();
  const std::vector<double> sigma(scenario.d, scenario.sigma);
  const bool noiseless = scenario.diffusion == 0.0;
  std::vector<ScenarioRow> rows;
  for (std::size_t k = 0; k < scenario.t_grid.size(); ++k) {
    const double requested = scenario.t_grid[k];
    const auto steps = static_cast<std::size_t>(std::max<long long>(1, std::llround(requested / scenario.dt)));
    const double t = monte_carlo ? scenario.dt * static_cast<double>(steps) : requested;

    const auto a = noiseless ? noiseless_at(scenario, t) : analytic_at(kind, sigma, scenario.n_particles, t);
    ScenarioRow row{t, a.sr, kNaN, kNaN, a.s0, a.st, a.avg_st, noiseless};
    if (monte_carlo) {
      SdeConfig config;
      config.kind = kind;
      config.dt = scenario.dt;
      config.n_steps = steps;
      config.n_particles = scenario.n_particles;
      config.n_trials = scenario.n_trials;
      config.seed = mix64(scenario.seed ^ mix64(k));
      config.prior = GaussianPrior{scenario.sigma, 0.0};
      const auto ensemble = simulate(config, threads);
      std::vector<BinGrid> grids;
      for (std::size_t dim = 0; dim < scenario.d; ++dim) grids.push_back(initial_grid(config, dim, scenario.bins));
      EstimatorOptions options;
      options.final_bins = scenario.bins;
      options.seed = config.seed;
      options.threads = threads;
      const auto estimate = empirical_retrodiction_entropy(ensemble, grids, options);
      row.sr_empirical = estimate.sr_estimate;
      row.standard_error = estimate.standard_error;
    }
    rows.push_back(row);
  }
  return rows;
}

Figure parse_figure(std::string_view name) {
  if (name == "fig1a") return Figure::Fig1a;
  if (name == "fig1b") return Figure::Fig1b;
  if (name == "fig2a") return Figure::Fig2a;
  if (name == "fig2b") return Figure::Fig2b;
  throw InputError("unknown figure '" + std::string(name) + "' (expected fig1a, fig1b, fig2a or fig2b)");
}

std::string figure_name(Figure figure) {
  switch (figure) {
    case Figure::Fig1a: return "fig1a";
    case Figure::Fig1b: return "fig1b";
    case Figure::Fig2a: return "fig2a";
    case Figure::Fig2b: return "fig2b";
  }
  return "";
}

std::vector<double> log_time_grid(double lo, double hi, std::size_t points_per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || points_per_decade == 0) throw InputError("log time grid: need 0 < lo <= hi");
  const double decades = std::log10(hi / lo);
  const auto n = static_cast<std::size_t>(std::llround(decades * static_cast<double>(points_per_decade)));
  std::vector<double> out;
  for (std::size_t i = 0; i <= n; ++i) {
    out.push_back(n == 0 ? lo : lo * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(n)));
  }
  return out;
}

std::vector<CurvePoint> figure_curves(Figure figure, std::size_t points_per_decade, std::size_t overlay_trials,
                                      std::uint64_t seed, unsigned threads, double overlay_max_t) {
  std::vector<double> thetas;
  std::vector<double> times;
  double sigma = 5.0;
  std::size_t n = 5;
  switch (figure) {
    case Figure::Fig1a:
      sigma = kInf;
      [[fallthrough]];
    case Figure::Fig1b:
      thetas = {-1.0, -0.5, 0.0, 0.5, 1.0};
      times = log_time_grid(1e-3, 1e3, points_per_decade);
      break;
    case Figure::Fig2a:
      n = 2;
      thetas = {1.0};
      times = log_time_grid(1e-2, 1e2, points_per_decade);
      break;
    case Figure::Fig2b:
      for (int i = -20; i <= 20; ++i) thetas.push_back(0.1 * i);
      times = {1.0, 10.0, 100.0, 1000.0};
      break;
  }
  std::vector<CurvePoint> out;
  std::uint64_t point_index = 0;
  for (double theta : thetas) {
    gaussian::ProcessKind kind = theta == 0.0 ? gaussian::ProcessKind{gaussian::Wiener{{1.0}}}
                                              : gaussian::ProcessKind{gaussian::OrnsteinUhlenbeck{{1.0}, theta}};
    for (double t : times) {
      CurvePoint p;
      p.theta = theta;
      p.sigma = sigma;
      p.n_particles = n;
      p.t = t;
      const auto a = analytic_at(kind, {sigma}, n, t);
      p.s0 = a.s0;
      p.st = a.st;
      p.avg_st = a.avg_st;
      p.sr = a.sr;
      p.sr_empirical = kNaN;
      p.standard_error = kNaN;
      if (overlay_trials > 0 && std::isfinite(sigma) && t <= overlay_max_t) {
        SdeConfig config;
        config.kind = kind;
        config.dt = t;  // the exact sampler jumps straight to t
        config.n_steps = 1;
        config.n_particles = n;
        config.n_trials = overlay_trials;
        config.seed = mix64(seed ^ mix64(point_index));
        config.prior = GaussianPrior{sigma, 0.0};
        if (config.dt * std::abs(theta) > kMaxStepContraction) {
          config.n_steps = static_cast<std::size_t>(std::ceil(t * std::abs(theta) / kMaxStepContraction));
          config.dt = t / static_cast<double>(config.n_steps);
        }
        const auto ensemble = exact_sampler(config, threads);
        EstimatorOptions options;
        options.seed = config.seed;
        options.threads = threads;
        const auto estimate = empirical_retrodiction_entropy(ensemble, {initial_grid(config, 0, 128)}, options);
        p.sr_empirical = estimate.sr_estimate;
        p.standard_error = estimate.standard_error;
      }
      ++point_index;
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace retrodict::langevin
