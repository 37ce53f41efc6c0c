#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "app.hpp"
#include "retrodict/format.hpp"

namespace fs = std::filesystem;
using retrodict::parse_number;
using namespace retrodict::cli;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "retrodict");
  std::ostringstream out, err;
  Run r;
  r.status = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const std::string& name) { return std::string(RETRODICT_FIXTURES) + "/" + name; }

using Rows = std::vector<std::map<std::string, std::string>>;

Rows parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',')) header.push_back(cell);
  }
  Rows rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream l(line);
    std::string cell;
    std::map<std::string, std::string> row;
    for (const auto& name : header) {
      std::getline(l, cell, ',');
      row[name] = cell;
    }
    rows.push_back(row);
  }
  return rows;
}

double num(const std::map<std::string, std::string>& row, const std::string& key) { return parse_number(row.at(key)); }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("retrodict_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli identity") {
  TEST_CASE("random systems satisfy every identity") {
    const auto r = cli({"--seed", "5", "identity", "--random", "8"});
    CHECK(r.status == kSuccess);
    CHECK(r.out.find("\"avg_sr\"") != std::string::npos);
  }

  TEST_CASE("identity kernel fixture") {
    const auto r = cli({"--format", "json", "identity", "--kernel", fixture("identity_kernel.csv")});
    CHECK(r.status == kSuccess);
    const auto report = nlohmann::json::parse(r.out.substr(0, r.out.find("}\n") + 1));
    CHECK(report["avg_sr"].get<double>() == 0.0);
    CHECK(report["mutual_info"].get<double>() == doctest::Approx(std::log(3.0)));
    CHECK(report["kl_t_t"].get<std::string>() == "inf");
  }

  TEST_CASE("zero-probability final state is flagged, not fatal") {
    const auto r = cli({"identity", "--kernel", fixture("zero_mass_kernel.csv"), "--prior", fixture("skewed_prior.json")});
    CHECK(r.status == kSuccess);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(r.err.find("never") != std::string::npos);
  }

  TEST_CASE("malformed input is an input error with a position") {
    const auto r = cli({"identity", "--kernel", fixture("malformed_kernel.csv")});
    CHECK(r.status == kInputError);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(cli({"identity", "--kernel", fixture("missing.csv")}).status == kInputError);
  }

  TEST_CASE("prior labels must match the kernel") {
    const auto r = cli({"identity", "--kernel", fixture("identity_kernel.csv"), "--prior", fixture("skewed_prior.json")});
    CHECK(r.status == kInputError);
  }
}

TEST_SUITE("cli gaussian") {
  TEST_CASE("concave potential plateaus") {
    const auto r = cli({"gaussian", "--kind", "ou", "--theta", "-1", "--sigma", "inf", "--N", "5", "--d", "1"});
    REQUIRE(r.status == kSuccess);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() > 20);
    const double last = num(rows.back(), "sr");
    CHECK(std::abs(last - num(rows[rows.size() - 10], "sr")) < 1e-9);
    CHECK(last == doctest::Approx(0.5 * std::log(2.0 * M_PI * M_E / 5.0)).epsilon(1e-12));
    CHECK(rows.back().at("s0") == "inf");
  }

  TEST_CASE("free diffusion grows logarithmically") {
    const auto r = cli({"gaussian", "--kind", "wiener", "--sigma", "inf", "--t-grid", "1e-3:1e3:1"});
    REQUIRE(r.status == kSuccess);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 7);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(num(rows[i], "sr") - num(rows[i - 1], "sr") == doctest::Approx(0.5 * std::log(10.0)).epsilon(1e-12));
    }
  }

  TEST_CASE("quadrature check") {
    const auto r = cli({"gaussian", "--kind", "ou", "--theta", "0.5", "--sigma", "2", "--N", "2", "--d", "2",
                        "--t-grid", "0.01:100:2", "--quadrature-check"});
    CHECK(r.status == kSuccess);
    std::size_t checked = 0;
    for (const auto& row : parse_csv(r.out)) {
      const double residual = num(row, "quadrature_residual");
      if (std::isnan(residual)) continue;
      ++checked;
      CHECK(residual < 1e-6);
    }
    CHECK(checked == 5);
    CHECK(cli({"gaussian", "--N", "3", "--quadrature-check"}).status == kInputError);
  }

  TEST_CASE("bad arguments") {
    CHECK(cli({"gaussian", "--sigma", "-1"}).status == kInputError);
    CHECK(cli({"gaussian", "--kind", "levy"}).status == kInputError);
    CHECK(cli({"gaussian", "--t-grid", "1:2"}).status == kInputError);
    CHECK(cli({"--format", "xml", "gaussian"}).status == kInputError);
    CHECK(cli({"nonsense"}).status == kInputError);
    CHECK(cli({"--help"}).status == kSuccess);
  }
}

TEST_SUITE("cli langevin") {
  TEST_CASE("OU benchmark config") {
    const auto r = cli({"langevin", "--config", fixture("ou_benchmark.json")});
    CHECK(r.status == kSuccess);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(num(rows[0], "sr_empirical") - num(rows[0], "sr_analytic")) < 0.05);
  }

  TEST_CASE("noiseless config is flagged and still succeeds") {
    const auto r = cli({"langevin", "--config", fixture("noiseless.json")});
    CHECK(r.status == kSuccess);
    CHECK(r.err.find("warning") != std::string::npos);
  }

  TEST_CASE("flags override the config file") {
    const auto r = cli({"langevin", "--config", fixture("noiseless.json"), "--D", "1", "--trials", "20000", "--t", "2"});
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(num(rows[0], "t") == 2.0);
    CHECK(std::isfinite(num(rows[0], "sr_analytic")));
  }

  TEST_CASE("same seed twice gives identical digests") {
    const auto a = scratch("digest_a");
    const auto b = scratch("digest_b");
    const std::vector<std::string> common{"langevin", "--theta", "0.5", "--trials", "20000", "--t", "0.5,1"};
    auto args_a = common;
    args_a.insert(args_a.begin(), {"--seed", "11", "--out", a.string()});
    auto args_b = common;
    args_b.insert(args_b.begin(), {"--seed", "11", "--out", b.string(), "--threads", "2"});
    cli(args_a);
    cli(args_b);
    const auto ma = nlohmann::json::parse(slurp(a / "manifest.json"));
    const auto mb = nlohmann::json::parse(slurp(b / "manifest.json"));
    CHECK(ma["outputs"] == mb["outputs"]);
    CHECK(ma["seed"] == 11);
    CHECK(ma["subcommand"] == "langevin");
    CHECK(slurp(a / "langevin.csv") == slurp(b / "langevin.csv"));
  }
}

TEST_SUITE("cli logistic") {
  TEST_CASE("basin at r = 3.2 alternates between the period-2 values") {
    for (const auto& args : {std::vector<std::string>{"logistic", "--basin", "--r", "3.2", "--resolution", "200"},
                             std::vector<std::string>{"basin", "--r", "3.2", "--resolution", "200"}}) {
      const auto r = cli(args);
      REQUIRE(r.status == kSuccess);
      const auto rows = parse_csv(r.out);
      REQUIRE(rows.size() == 200);
      for (const auto& row : rows) {
        const double x = num(row, "x_tau");
        CHECK((std::abs(x - 0.5130) < 1e-4 || std::abs(x - 0.7995) < 1e-4 || std::abs(x - 0.6875) < 1e-9));
      }
    }
  }

  TEST_CASE("desk-sized plateau scan") {
    const auto dir = scratch("scan");
    const auto r =
        cli({"--out", dir.string(), "logistic", "--config", fixture("small_scan.json"), "--desk", "--features", "--quiet"});
    CHECK(r.status == kSuccess);
    CHECK(r.err.find("plateau r = 3.2") != std::string::npos);
    const auto rows = parse_csv(slurp(dir / "scan.csv"));
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
      if (row.at("tau") != "500") continue;
      const double target = num(row, "r") == 2.5 ? 0.0 : -std::log(2.0);
      CHECK(std::abs(num(row, "sr_mean_nats") - target) < 0.1);
    }
    CHECK(fs::exists(dir / "features.json"));
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["config"]["seed"] == 3);
    CHECK(manifest["outputs"].contains("scan.csv"));
  }

  TEST_CASE("full-size plateau tolerance is enforced on a small run") {
    const auto r = cli({"logistic", "--config", fixture("small_scan.json"), "--quiet"});
    CHECK(r.status == kContractViolation);
    CHECK(r.err.find("FAIL") != std::string::npos);
    CHECK(parse_csv(r.out).size() == 4);
  }

  TEST_CASE("seed precedence: flag over file over environment") {
    const auto dir = scratch("seed");
    cli({"--out", dir.string(), "--seed", "9", "logistic", "--config", fixture("small_scan.json"), "--r-grid", "2.5",
         "--replicates", "1", "--samples", "10", "--quiet"});
    CHECK(nlohmann::json::parse(slurp(dir / "manifest.json"))["seed"] == 9);
    setenv("RETRODICT_SEED", "21", 1);
    cli({"--out", dir.string(), "logistic", "--config", fixture("small_scan.json"), "--r-grid", "2.5", "--replicates", "1",
         "--samples", "10", "--quiet"});
    CHECK(nlohmann::json::parse(slurp(dir / "manifest.json"))["seed"] == 3);
    cli({"--out", dir.string(), "logistic", "--r-grid", "2.5", "--replicates", "1", "--samples", "10", "--bins", "10",
         "--taus", "10", "--quiet"});
    CHECK(nlohmann::json::parse(slurp(dir / "manifest.json"))["seed"] == 21);
    setenv("RETRODICT_SEED", "abc", 1);
    CHECK(cli({"logistic", "--r-grid", "2.5", "--quiet"}).status == kInputError);
    unsetenv("RETRODICT_SEED");
  }

  TEST_CASE("invalid logistic input") {
    CHECK(cli({"logistic", "--r-grid", "4.5", "--quiet"}).status == kInputError);
    CHECK(cli({"logistic", "--bins", "1", "--quiet"}).status == kInputError);
  }
}
