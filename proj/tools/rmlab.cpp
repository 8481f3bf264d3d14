// rmlab: scenario runner. Writes report.json, timing.json and CSV tables
// into --out. Exit status 0 when every verdict passes or is inconclusive,
// 1 on any failure, 2 on a usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmlab/error.hpp"
#include "rmlab/harness.hpp"
#include "rmlab/report.hpp"

namespace {

using namespace rmlab;
using namespace rmlab::harness;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> n;
  std::vector<std::size_t> N;
  std::vector<double> p;
  std::optional<std::string> dist;
  std::optional<std::string> shaper;
  std::optional<std::string> out;
  std::optional<std::string> config;
  std::optional<std::size_t> k;
  std::optional<std::size_t> workers;
  bool exact = false;
  bool quiet = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot read config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

ExperimentConfig make_config(const std::string& scenario, const Overrides& o) {
  ExperimentConfig c = default_config(scenario);
  if (o.config) {
    std::string text = read_file(*o.config);
    // Keys the file leaves out take the subcommand's defaults.
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_object()) {
      j["scenario"] = scenario;
      text = j.dump();
    }
    c = parse_config_json(text);
    c.scenario = scenario;
  }
  if (o.seed) c.seed = *o.seed;
  if (o.trials) c.trials = *o.trials;
  if (o.n) {
    c.n = *o.n;
    c.shaper.m = *o.n;
  }
  if (!o.N.empty()) {
    if (scenario == "scaling") {
      c.N_grid = o.N;
    } else {
      c.shaper.N = o.N.front();
    }
  }
  if (!o.p.empty()) c.p_grid = o.p;
  if (o.dist) c.dist = dist::parse(*o.dist);
  if (o.shaper) c.shaper.kind = parse_shaper_kind(*o.shaper);
  if (o.out) c.out = *o.out;
  if (o.k) c.k = *o.k;
  if (o.workers) c.workers = *o.workers;
  if (o.exact) c.norm_method = linalg::NormMethod::Exact;
  c.validate();
  return c;
}

void print_summary(const RunReport& report) {
  for (const auto& s : report.scenarios) {
    for (const auto& v : s.verdicts) {
      std::printf("%-14s %-40s %-12s observed=%.6g limit=%.6g\n", s.name.c_str(), v.item.c_str(),
                  std::string(status_name(v.status)).c_str(), v.observed, v.limit);
    }
    if (s.convergence_warnings > 0) {
      std::printf("%-14s %zu power iterations hit the cap\n", s.name.c_str(), s.convergence_warnings);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo experiments on spectral norms of shaped random matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(library_version()));

  Overrides o;
  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--trials", o.trials, "Monte Carlo trials per cell");
  app.add_option("--n", o.n, "Columns of A (and rows of B)");
  app.add_option("--N", o.N, "Columns of B; a list for the scaling scenario")->delimiter(',');
  app.add_option("--p", o.p, "Moment orders")->delimiter(',');
  app.add_option("--dist", o.dist, "Entry law, e.g. laplace{scale=1}");
  app.add_option("--shaper", o.shaper, "identity_embed, partial_isometry, replicated_average or explicit");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--k", o.k, "Replication factor for small-columns");
  app.add_option("--workers", o.workers, "Worker threads (0 = all cores)");
  app.add_flag("--exact", o.exact, "Use the Jacobi SVD instead of power iteration");
  app.add_flag("--quiet", o.quiet, "Do not print verdicts");

  std::vector<std::string> scenarios = scenario_names();
  for (const auto& name : scenarios) app.add_subcommand(name, "Run the " + name + " scenario")->fallthrough();
  app.add_subcommand("all", "Run every scenario with its defaults")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::vector<ExperimentConfig> configs;
  try {
    if (command == "all") {
      for (const auto& name : scenarios) {
        ExperimentConfig c = default_config(name);
        if (o.seed) c.seed = *o.seed;
        if (o.workers) c.workers = *o.workers;
        configs.push_back(c);
      }
    } else {
      configs.push_back(make_config(command, o));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rmlab: %s\n", e.what());
    return 2;
  }

  const std::string out = o.out.value_or(configs.front().out);
  RunReport report;
  report.version = std::string(library_version());
  report.master_seed = configs.front().seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    for (const auto& c : configs) report.scenarios.push_back(run_scenario(c));
    report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit_report(report, out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "rmlab: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rmlab: %s\n", e.what());
    return 1;
  }
  if (!o.quiet) print_summary(report);
  std::printf("wrote %s (%.1f s)\n", out.c_str(), report.wall_clock_seconds);
  return report.failed() ? 1 : 0;
}
