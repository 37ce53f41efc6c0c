#include "app.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <sstream>

#include "manifest.hpp"
#include "retrodict/core/divergence.hpp"
#include "retrodict/core/entropy.hpp"
#include "retrodict/core/io.hpp"
#include "retrodict/core/random_systems.hpp"
#include "retrodict/errors.hpp"
#include "retrodict/format.hpp"
#include "retrodict/gaussian/entropies.hpp"
#include "retrodict/gaussian/quadrature.hpp"
#include "retrodict/json_parse.hpp"
#include "retrodict/langevin/scenario.hpp"
#include "retrodict/logistic/features.hpp"
#include "retrodict/logistic/map.hpp"
#include "retrodict/logistic/scan.hpp"
#include "retrodict/random.hpp"
#include "table.hpp"

#ifndef RETRODICT_VERSION
#define RETRODICT_VERSION "unknown"
#endif

namespace retrodict::cli {

namespace {

using nlohmann::ordered_json;

struct Output {
  std::string name;
  std::string content;
};

struct CommandResult {
  int status = kSuccess;
  std::vector<Output> outputs;
  ordered_json config = ordered_json::object();
};

struct GlobalOptions {
  std::optional<std::uint64_t> seed_flag;
  unsigned threads = 1;
  std::string out_dir;
  std::string format = "csv";

  /// --seed, then RETRODICT_SEED, then `fallback`.
  std::uint64_t seed(std::uint64_t fallback = 0) const {
    if (seed_flag) return *seed_flag;
    if (const char* env = std::getenv("RETRODICT_SEED")) {
      std::uint64_t value = 0;
      std::istringstream in(env);
      if (!(in >> value) || !in.eof()) throw InputError("RETRODICT_SEED is not an unsigned integer: '" + std::string(env) + "'");
      return value;
    }
    return fallback;
  }
  bool seed_given() const { return seed_flag.has_value() || std::getenv("RETRODICT_SEED") != nullptr; }
  std::string table_name(const std::string& stem) const { return stem + (format == "json" ? ".json" : ".csv"); }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_number(p));
  if (out.empty()) throw InputError("empty list '" + text + "'");
  return out;
}

/// "lo:hi:points_per_decade" (log spaced) or a comma list.
std::vector<double> parse_time_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 3) {
    const double ppd = parse_number(parts[2]);
    if (!(ppd >= 1.0) || ppd != std::floor(ppd)) throw InputError("time grid: points per decade must be a positive integer");
    return langevin::log_time_grid(parse_number(parts[0]), parse_number(parts[1]), static_cast<std::size_t>(ppd));
  }
  if (parts.size() != 1) throw InputError("time grid must be 'lo:hi:points_per_decade' or a comma list");
  return parse_list(text);
}

/// "lo:hi:step" (linear) or a comma list.
std::vector<double> parse_r_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 3) return logistic::linear_grid(parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2]));
  if (parts.size() != 1) throw InputError("r grid must be 'lo:hi:step' or a comma list");
  return parse_list(text);
}

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_list(text)) {
    if (!(v >= 1.0) || v != std::floor(v)) throw InputError("expected positive integers in '" + text + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- identity

struct IdentityArgs {
  std::string kernel;
  std::string prior;
  std::size_t random_states = 0;
};

CommandResult cmd_identity(const IdentityArgs& a, const GlobalOptions& g, std::ostream& err) {
  CommandResult result;
  std::optional<core::TransitionKernel> kernel;
  std::optional<core::DiscreteDistribution> prior;
  if (a.random_states > 0) {
    if (!a.kernel.empty() || !a.prior.empty()) throw InputError("identity: --random excludes --kernel and --prior");
    const auto seed = g.seed();
    auto engine = make_stream(seed, {0x1d});
    kernel = core::random_kernel(a.random_states, a.random_states, engine);
    prior = core::random_distribution(a.random_states, engine);
    result.config = {{"random", a.random_states}, {"seed", seed}};
  } else {
    if (a.kernel.empty()) throw InputError("identity: give --kernel FILE or --random N");
    kernel = core::load_kernel(a.kernel);
    if (a.prior.empty()) {
      err << "note: no --prior given; using the uniform prior over the kernel's source states\n";
      prior = core::DiscreteDistribution::uniform(kernel->source_labels());
    } else {
      prior = core::load_distribution(a.prior);
      if (prior->labels() != kernel->source_labels()) {
        throw InputError("identity: prior labels do not match the kernel's source labels");
      }
    }
    result.config = {{"kernel", a.kernel}, {"prior", a.prior.empty() ? ordered_json(nullptr) : ordered_json(a.prior)}};
  }
  if (a.random_states == 0 && !prior->was_normalized()) err << "note: prior renormalized (sum deviated by " << prior->raw_deviation() << ")\n";
  if (a.random_states == 0 && kernel->max_row_deviation() > core::kNormalizationTolerance) {
    err << "note: kernel rows renormalized (largest deviation " << kernel->max_row_deviation() << ")\n";
  }

  const auto rk = core::bayes_invert(*kernel, *prior);
  if (rk.unsupported_count() > 0) {
    err << "warning: " << rk.unsupported_count()
        << " final state(s) have zero probability and are excluded from averages:";
    for (std::size_t w = 0; w < rk.final_size(); ++w) {
      if (!rk.supported(w)) err << ' ' << rk.final_labels()[w];
    }
    err << '\n';
  }

  const auto report = core::entropy_report(*kernel, *prior);
  const auto relations = core::verify_kl_relations(*kernel, *prior);
  Table residuals({"relation", "lhs", "rhs", "residual", "checkable"});
  residuals.add({std::string("<S_R> = <S_T> - (S_t - S_0)"), report.avg_sr(), report.avg_st() - (report.st() - report.s0()),
                 std::abs(report.fundamental_residual()), std::string("true")});
  residuals.add({std::string("I = S_0 - <S_R>"), report.mutual_info(), report.s0() - report.avg_sr(),
                 std::abs(report.mutual_info_residual()), std::string("true")});
  bool ok = true;
  for (const auto& r : relations.relations) {
    residuals.add({r.name, r.lhs, r.rhs, r.residual(), std::string(r.checkable ? "true" : "false")});
    if (r.checkable && !(r.residual() < 1e-10)) ok = false;
  }
  if (relations.unchecked() > 0) {
    err << "note: " << relations.unchecked() << " relation(s) involve infinite divergences and were not checked\n";
  }
  result.outputs.push_back({"report.json", core::report_to_json(report)});
  result.outputs.push_back({g.table_name("residuals"), residuals.render(g.format)});
  result.status = ok ? kSuccess : kContractViolation;
  return result;
}

// ---------------------------------------------------------------- gaussian

struct GaussianArgs {
  std::string kind = "ou";
  double theta = 1.0;
  double diffusion = 1.0;
  std::string sigma = "inf";
  std::size_t n_particles = 1;
  std::size_t d = 1;
  std::string t_grid = "1e-3:1e3:10";
  bool quadrature_check = false;
};

gaussian::ProcessKind make_kind(const std::string& kind, double theta, double diffusion, std::size_t d) {
  std::vector<double> diffusions(d, diffusion);
  if (kind == "wiener") return gaussian::Wiener{diffusions};
  if (kind == "ou") return gaussian::OrnsteinUhlenbeck{diffusions, theta};
  throw InputError("unknown process kind '" + kind + "' (expected wiener or ou)");
}

CommandResult cmd_gaussian(const GaussianArgs& a, const GlobalOptions& g, std::ostream& err) {
  CommandResult result;
  const double sigma = parse_number(a.sigma);
  if (!(sigma > 0.0)) throw InputError("gaussian: --sigma must be positive or inf");
  const auto times = parse_time_grid(a.t_grid);
  const auto kind = make_kind(a.kind, a.theta, a.diffusion, a.d);
  const double theta = gaussian::theta_of(kind);
  const auto spec = gaussian::GaussianProcessSpec::from_kind(kind, std::vector<double>(a.d, sigma), a.n_particles);
  result.config = {{"kind", a.kind}, {"theta", theta}, {"D", a.diffusion},
                   {"sigma", std::isinf(sigma) ? ordered_json(nullptr) : ordered_json(sigma)},
                   {"N", a.n_particles}, {"d", a.d}, {"t_grid", times}, {"quadrature_check", a.quadrature_check}};

  std::vector<bool> check(times.size(), false);
  if (a.quadrature_check) {
    if (a.n_particles > 2 || a.d > 2) throw InputError("gaussian: --quadrature-check supports N <= 2 and d <= 2");
    if (std::isinf(sigma)) {
      err << "note: with sigma = inf the prior and observation entropies are infinite; "
             "checking the transition and retrodiction entropies only\n";
    }
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (std::abs(theta) * times[i] <= 50.0) eligible.push_back(i);
    }
    const std::size_t picks = std::min<std::size_t>(5, eligible.size());
    for (std::size_t k = 0; k < picks; ++k) {
      const std::size_t idx = picks == 1 ? 0 : k * (eligible.size() - 1) / (picks - 1);
      check[eligible[idx]] = true;
    }
  }

  std::vector<std::string> columns{"process", "theta", "D", "sigma", "N", "d", "t", "s0", "st", "avg_st", "sr"};
  if (a.quadrature_check) columns.push_back("quadrature_residual");
  Table table(columns);
  bool ok = true;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const auto b = gaussian::gaussian_entropy_bundle(spec, t);
    std::vector<Cell> row{a.kind, theta, a.diffusion, sigma, static_cast<double>(a.n_particles),
                          static_cast<double>(a.d), t, b.s0, b.st_observation, b.s_t_transition, b.sr};
    if (a.quadrature_check) {
      double residual = std::numeric_limits<double>::quiet_NaN();
      if (check[i]) {
        residual = std::abs(b.s_t_transition - gaussian::quadrature_transition_entropy(spec, t));
        residual = std::max(residual, std::abs(b.sr - gaussian::quadrature_retrodiction_entropy(spec, t)));
        if (!std::isinf(sigma)) {
          residual = std::max(residual, std::abs(b.s0 - gaussian::quadrature_prior_entropy(spec)));
          residual = std::max(residual, std::abs(b.st_observation - gaussian::quadrature_observation_entropy(spec, t)));
        }
        if (!(residual < 1e-6)) ok = false;
      }
      row.push_back(residual);
    }
    table.add(std::move(row));
  }
  result.outputs.push_back({g.table_name("gaussian"), table.render(g.format)});
  result.status = ok ? kSuccess : kContractViolation;
  return result;
}

// ---------------------------------------------------------------- langevin

struct LangevinArgs {
  std::string config;
  std::string figure;
  std::size_t overlay_trials = 0;
  std::size_t points_per_decade = 10;
  CLI::Option* kind = nullptr;
  CLI::Option* theta = nullptr;
  CLI::Option* diffusion = nullptr;
  CLI::Option* sigma = nullptr;
  CLI::Option* n_particles = nullptr;
  CLI::Option* d = nullptr;
  CLI::Option* t = nullptr;
  CLI::Option* dt = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* bins = nullptr;
  std::string kind_value;
  double theta_value = 0.0;
  double diffusion_value = 0.0;
  std::string sigma_value;
  std::size_t n_value = 0;
  std::size_t d_value = 0;
  std::string t_value;
  double dt_value = 0.0;
  std::size_t trials_value = 0;
  std::size_t bins_value = 0;
};

CommandResult cmd_langevin_figure(const LangevinArgs& a, const GlobalOptions& g) {
  CommandResult result;
  const auto figure = langevin::parse_figure(a.figure);
  const auto seed = g.seed();
  const auto points = langevin::figure_curves(figure, a.points_per_decade, a.overlay_trials, seed, g.threads);
  Table table({"figure", "theta", "sigma", "N", "t", "s0", "st", "avg_st", "sr", "sr_empirical", "stderr"});
  for (const auto& p : points) {
    table.add({langevin::figure_name(figure), p.theta, p.sigma, static_cast<double>(p.n_particles), p.t, p.s0, p.st,
               p.avg_st, p.sr, p.sr_empirical, p.standard_error});
  }
  result.config = {{"figure", a.figure}, {"points_per_decade", a.points_per_decade},
                   {"overlay_trials", a.overlay_trials}, {"seed", seed}};
  result.outputs.push_back({g.table_name(a.figure), table.render(g.format)});
  return result;
}

CommandResult cmd_langevin(const LangevinArgs& a, const GlobalOptions& g, std::ostream& err) {
  if (!a.figure.empty()) return cmd_langevin_figure(a, g);
  CommandResult result;
  langevin::Scenario s;
  bool seed_in_file = false;
  if (!a.config.empty()) {
    const auto text = read_text(a.config);
    s = langevin::parse_scenario(text);
    seed_in_file = parse_json(text).contains("seed");
  }
  if (a.kind->count()) s.kind = a.kind_value;
  if (a.theta->count()) s.theta = a.theta_value;
  if (s.kind == "wiener") s.theta = 0.0;
  if (a.diffusion->count()) s.diffusion = a.diffusion_value;
  if (a.sigma->count()) s.sigma = parse_number(a.sigma_value);
  if (a.n_particles->count()) s.n_particles = a.n_value;
  if (a.d->count()) s.d = a.d_value;
  if (a.t->count()) s.t_grid = parse_time_grid(a.t_value);
  if (a.dt->count()) s.dt = a.dt_value;
  if (a.trials->count()) s.n_trials = a.trials_value;
  if (a.bins->count()) s.bins = a.bins_value;
  if (g.seed_flag || !seed_in_file) s.seed = g.seed(s.seed);
  s.validate();
  result.config = ordered_json::parse(langevin::scenario_to_json(s));

  const auto rows = langevin::run_scenario(s, g.threads, true);
  Table table({"t", "sr_analytic", "sr_empirical", "stderr", "s0", "st", "avg_st"});
  bool ok = true;
  for (const auto& r : rows) {
    table.add({r.t, r.sr_analytic, r.sr_empirical, r.standard_error, r.s0, r.st, r.avg_st});
    if (r.degenerate) {
      err << "warning: t = " << format_number(r.t)
          << ": noiseless dynamics; the empirical value is the grid-resolution floor, not an entropy of the process\n";
    } else if (!r.agrees()) {
      err << "contract: t = " << format_number(r.t) << ": |" << format_number(r.sr_empirical) << " - "
          << format_number(r.sr_analytic) << "| exceeds 3 stderr + 0.05\n";
      ok = false;
    }
  }
  result.outputs.push_back({g.table_name("langevin"), table.render(g.format)});
  result.status = ok ? kSuccess : kContractViolation;
  return result;
}

// ---------------------------------------------------------------- logistic

struct LogisticArgs {
  std::string config;
  bool desk = false;
  bool features = false;
  bool basin = false;
  bool quiet = false;
  double basin_r = 3.2;
  std::size_t basin_tau = 200;
  std::size_t resolution = 1000;
  CLI::Option* r_grid = nullptr;
  CLI::Option* bins = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* taus = nullptr;
  CLI::Option* replicates = nullptr;
  std::string r_grid_value;
  std::size_t bins_value = 0;
  std::size_t samples_value = 0;
  std::string taus_value;
  std::size_t replicates_value = 0;
};

struct PlateauContract {
  double r;
  double target;
  double tolerance;
};

logistic::LogisticScanConfig logistic_config_from_json(const std::string& text, bool& seed_in_file) {
  const auto doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("logistic config must be a JSON object", 1, 1);
  logistic::LogisticScanConfig c;
  c.r_grid.clear();
  try {
    if (doc.contains("r_grid")) c.r_grid = doc["r_grid"].get<std::vector<double>>();
    if (doc.contains("r_range")) {
      const auto range = doc["r_range"].get<std::vector<double>>();
      if (range.size() != 3) throw InputError("logistic config: r_range is [lo, hi, step]");
      c.r_grid = logistic::linear_grid(range[0], range[1], range[2]);
    }
    if (doc.contains("bins")) c.bins = doc["bins"].get<std::size_t>();
    if (doc.contains("samples_per_bin")) c.samples_per_bin = doc["samples_per_bin"].get<std::size_t>();
    if (doc.contains("taus")) c.taus = doc["taus"].get<std::vector<std::size_t>>();
    if (doc.contains("replicates")) c.replicates = doc["replicates"].get<std::size_t>();
    seed_in_file = doc.contains("seed");
    if (seed_in_file) c.seed = doc["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("logistic config: ") + e.what());
  }
  return c;
}

CommandResult cmd_basin(double r, std::size_t tau, std::size_t resolution, const GlobalOptions& g) {
  CommandResult result;
  Table table({"x0", "x_tau"});
  for (const auto& [x0, xt] : logistic::basin_image(r, tau, resolution)) table.add({x0, xt});
  result.config = {{"r", r}, {"tau", tau}, {"resolution", resolution}};
  result.outputs.push_back({g.table_name("basin"), table.render(g.format)});
  return result;
}

CommandResult cmd_logistic(const LogisticArgs& a, const GlobalOptions& g, std::ostream& err) {
  if (a.basin) {
    auto result = cmd_basin(a.basin_r, a.basin_tau, a.resolution, g);
    result.config["mode"] = "basin";
    return result;
  }
  CommandResult result;
  logistic::LogisticScanConfig c;
  bool seed_in_file = false;
  if (!a.config.empty()) c = logistic_config_from_json(read_text(a.config), seed_in_file);
  if (a.desk) {
    c.bins = 100;
    c.samples_per_bin = 1000;
    c.replicates = 10;
  }
  if (a.r_grid->count()) c.r_grid = parse_r_grid(a.r_grid_value);
  if (c.r_grid.empty()) c.r_grid = logistic::linear_grid(2.5, 4.0, 0.01);
  if (a.bins->count()) c.bins = a.bins_value;
  if (a.samples->count()) c.samples_per_bin = a.samples_value;
  if (a.taus->count()) c.taus = parse_counts(a.taus_value);
  if (a.replicates->count()) c.replicates = a.replicates_value;
  if (g.seed_flag || !seed_in_file) c.seed = g.seed(c.seed);
  c.validate();
  std::sort(c.taus.begin(), c.taus.end());
  result.config = {{"r_grid", c.r_grid}, {"bins", c.bins}, {"samples_per_bin", c.samples_per_bin},
                   {"taus", c.taus}, {"replicates", c.replicates}, {"seed", c.seed}, {"desk", a.desk}};

  std::size_t last_percent = 101;
  auto progress = [&](std::size_t done, std::size_t total) {
    if (a.quiet) return;
    const std::size_t percent = 100 * done / total;
    if (percent != last_percent) {
      err << "\rlogistic scan: " << done << "/" << total << " (" << percent << "%)" << std::flush;
      last_percent = percent;
    }
    if (done == total) err << '\n';
  };
  const auto scan = logistic::scan(c, g.threads, progress);

  Table table({"r", "tau", "sr_mean_nats", "sr_std", "sr_normalized", "replicates"});
  for (const auto& p : scan.points) {
    table.add({p.r, static_cast<double>(p.tau), p.mean, p.std_dev, p.normalized, static_cast<double>(p.replicates)});
  }
  result.outputs.push_back({g.table_name("scan"), table.render(g.format)});

  const std::size_t tau = c.taus.back();
  if (a.features) {
    const auto report = logistic::feature_detect(scan, tau);
    bool coarse = false;
    for (std::size_t i = 0; i + 1 < c.r_grid.size(); ++i) coarse = coarse || (c.r_grid[i + 1] - c.r_grid[i] > 0.002 + 1e-9);
    if (coarse) err << "warning: r grid spacing exceeds 0.002; features on coarse stretches are reported unresolved\n";
    result.outputs.push_back({"features.json", logistic::features_to_json(report)});
  }

  const double loose = a.desk ? 0.1 : 0.0;
  const std::vector<PlateauContract> contracts{{2.5, 0.0, std::max(0.05, loose)},
                                               {3.2, -std::log(2.0), std::max(0.05, loose)},
                                               {3.52, -std::log(4.0), 0.1}};
  bool ok = true;
  const auto at_tau = scan.for_tau(tau);
  for (const auto& contract : contracts) {
    for (const auto& p : at_tau) {
      if (std::abs(p.r - contract.r) > 1e-6) continue;
      const bool pass = std::abs(p.mean - contract.target) <= contract.tolerance;
      err << "plateau r = " << contract.r << ": <S_R> = " << format_number(p.mean) << ", expected "
          << format_number(contract.target) << " +- " << contract.tolerance << (pass ? "  PASS" : "  FAIL") << '\n';
      ok = ok && pass;
    }
  }
  result.status = ok ? kSuccess : kContractViolation;
  return result;
}

// ---------------------------------------------------------------- driver

void emit(const CommandResult& result, const std::string& subcommand, std::uint64_t seed, double seconds,
          const GlobalOptions& g, std::ostream& out) {
  if (g.out_dir.empty()) {
    for (const auto& o : result.outputs) out << o.content;
    return;
  }
  const std::filesystem::path dir(g.out_dir);
  std::filesystem::create_directories(dir);
  RunManifest manifest;
  manifest.subcommand = subcommand;
  manifest.config_json = result.config.dump();
  manifest.seed = seed;
  manifest.version = RETRODICT_VERSION;
  manifest.duration_seconds = seconds;
  for (const auto& o : result.outputs) {
    std::ofstream file(dir / o.name, std::ios::binary);
    if (!file) throw InputError("cannot write '" + (dir / o.name).string() + "'");
    file << o.content;
    manifest.output_digests[o.name] = sha256_hex(o.content);
  }
  std::ofstream(dir / "manifest.json", std::ios::binary) << manifest.to_json();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Retrodiction entropy toolkit: discrete identities, Gaussian closed forms, Langevin "
               "simulation and logistic-map scans."};
  app.set_version_flag("--version", RETRODICT_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed (falls back to RETRODICT_SEED, then 0)");
  app.add_option("--threads", g.threads, "worker threads for scans and ensembles")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out_dir, "write outputs and manifest.json into this directory");
  app.add_option("--format", g.format, "table format")->check(CLI::IsMember({"csv", "json"}));

  auto* identity = app.add_subcommand("identity", "entropy report and KL-relation residuals for a discrete system");
  IdentityArgs ia;
  identity->add_option("--kernel", ia.kernel, "transition kernel file (.csv or .json)");
  identity->add_option("--prior", ia.prior, "prior distribution file (.csv or .json)");
  identity->add_option("--random", ia.random_states, "use a random strictly positive system with this many states")
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));

  auto* gauss = app.add_subcommand("gaussian", "closed-form entropies of Wiener and Ornstein-Uhlenbeck processes");
  GaussianArgs ga;
  gauss->add_option("--kind", ga.kind, "wiener or ou")->check(CLI::IsMember({"wiener", "ou"}));
  gauss->add_option("--theta", ga.theta, "potential convexity (ou)");
  gauss->add_option("--D", ga.diffusion, "diffusion constant")->check(CLI::PositiveNumber);
  gauss->add_option("--sigma", ga.sigma, "prior width, or inf for the uniform prior");
  gauss->add_option("--N", ga.n_particles, "particle count")->check(CLI::PositiveNumber);
  gauss->add_option("--d", ga.d, "dimension")->check(CLI::PositiveNumber);
  gauss->add_option("--t-grid", ga.t_grid, "times: 'lo:hi:points_per_decade' or a comma list");
  gauss->add_flag("--quadrature-check", ga.quadrature_check, "compare with numerical integration at up to 5 times");

  auto* lang = app.add_subcommand("langevin", "Monte-Carlo check of the Gaussian closed forms");
  LangevinArgs la;
  lang->add_option("--config", la.config, "scenario JSON file");
  lang->add_option("--figure", la.figure, "emit analytic curves: fig1a, fig1b, fig2a or fig2b");
  lang->add_option("--overlay-trials", la.overlay_trials, "with --figure: add binned estimates from this many trials");
  lang->add_option("--points-per-decade", la.points_per_decade, "with --figure: time resolution");
  la.kind = lang->add_option("--kind", la.kind_value, "wiener or ou")->check(CLI::IsMember({"wiener", "ou"}));
  la.theta = lang->add_option("--theta", la.theta_value, "potential convexity");
  la.diffusion = lang->add_option("--D", la.diffusion_value, "diffusion constant");
  la.sigma = lang->add_option("--sigma", la.sigma_value, "prior width");
  la.n_particles = lang->add_option("--N", la.n_value, "particle count");
  la.d = lang->add_option("--d", la.d_value, "dimension");
  la.t = lang->add_option("--t", la.t_value, "times: comma list or 'lo:hi:points_per_decade'");
  la.dt = lang->add_option("--dt", la.dt_value, "Euler-Maruyama step");
  la.trials = lang->add_option("--trials", la.trials_value, "ensemble size");
  la.bins = lang->add_option("--bins", la.bins_value, "bins per axis");

  auto* logi = app.add_subcommand("logistic", "retrodiction entropy of the logistic map under random coarse graining");
  LogisticArgs lo;
  logi->add_option("--config", lo.config, "scan JSON file");
  logi->add_flag("--desk", lo.desk, "reduced configuration: 100 bins, 1000 samples, 10 replicates");
  logi->add_flag("--features", lo.features, "also detect step edges and dips");
  logi->add_flag("--quiet", lo.quiet, "no progress output");
  logi->add_flag("--basin", lo.basin, "emit the basin image instead of a scan");
  logi->add_option("--r", lo.basin_r, "with --basin: map parameter");
  logi->add_option("--tau", lo.basin_tau, "with --basin: iterations");
  logi->add_option("--resolution", lo.resolution, "with --basin: initial points");
  lo.r_grid = logi->add_option("--r-grid", lo.r_grid_value, "'lo:hi:step' or a comma list");
  lo.bins = logi->add_option("--bins", lo.bins_value, "bins b");
  lo.samples = logi->add_option("--samples", lo.samples_value, "samples per bin s");
  lo.taus = logi->add_option("--taus", lo.taus_value, "comma list of iteration counts");
  lo.replicates = logi->add_option("--replicates", lo.replicates_value, "random coarse grainings per r");

  auto* basin = app.add_subcommand("basin", "final value of the logistic map against the initial value");
  double basin_r = 3.2;
  std::size_t basin_tau = 200;
  std::size_t basin_resolution = 1000;
  basin->add_option("--r", basin_r, "map parameter")->required();
  basin->add_option("--tau", basin_tau, "iterations");
  basin->add_option("--resolution", basin_resolution, "initial points")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << RETRODICT_VERSION << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (seed_opt->count()) g.seed_flag = seed_value;

  const auto started = std::chrono::steady_clock::now();
  try {
    CommandResult result;
    std::string name;
    if (identity->parsed()) {
      name = "identity";
      result = cmd_identity(ia, g, err);
    } else if (gauss->parsed()) {
      name = "gaussian";
      result = cmd_gaussian(ga, g, err);
    } else if (lang->parsed()) {
      name = "langevin";
      result = cmd_langevin(la, g, err);
    } else if (logi->parsed()) {
      name = "logistic";
      result = cmd_logistic(lo, g, err);
    } else {
      name = "basin";
      result = cmd_basin(basin_r, basin_tau, basin_resolution, g);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::uint64_t seed = 0;
    if (result.config.contains("seed")) seed = result.config["seed"].get<std::uint64_t>();
    emit(result, name, seed, seconds, g, out);
    return result.status;
  } catch (const ParseError& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kInputError;
  } catch (const UnreliableEstimate& e) {
    err << "error: unreliable estimate: " << e.what() << '\n';
    return kInputError;
  } catch (const UndefinedRetrodiction& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConsistencyError& e) {
    err << "contract violation: " << e.what() << '\n';
    return kContractViolation;
  }
}

}  // namespace retrodict::cli
