#include "rmlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "detail/format.hpp"
#include "detail/parallel.hpp"
#include "rmlab/compensated.hpp"
#include "rmlab/decomposition.hpp"
#include "rmlab/error.hpp"
#include "rmlab/lemma_suite.hpp"

#ifndef RMLAB_VERSION
#define RMLAB_VERSION "0.0.0"
#endif

namespace rmlab::harness {

using detail::fmt;

namespace {

// Stream tags. Shaper construction and trial sampling never share a stream.
constexpr std::uint64_t kShaperTag = 0x5ea1;
constexpr std::uint64_t kTrialTag = 0x7a1a;
constexpr std::uint64_t kLemmaTag = 0x1e44;

constexpr std::size_t kMaxColumns = 1000000;

SeedStream root_stream(const ExperimentConfig& c) { return SeedStream{c.seed, 0}; }

double relative_se(const dist::MomentValue& v) {
  return v.value > 0.0 ? v.std_error / v.value : 0.0;
}

double combined_rse(const dist::MomentValue& a, const dist::MomentValue& b) {
  return std::hypot(relative_se(a), relative_se(b));
}

ShaperSpec scenario_shaper(const ExperimentConfig& c) {
  ShaperSpec s = c.shaper;
  if (s.kind != ShaperKind::Explicit && s.m == 0) s.m = c.n;
  return s;
}

struct Cell {
  Matrix B;
  NormSamples samples;
  std::vector<dist::MomentValue> moments;
};

Cell run_cell(const ExperimentConfig& c, const ShaperSpec& spec, std::uint64_t cell) {
  Cell out;
  out.B = build_shaper(spec, root_stream(c).child(kShaperTag).child(cell));
  out.samples = sample_norms(out.B, c.n, c.dist, c.trials, root_stream(c).child(kTrialTag).child(cell),
                             c.norm_method, c.workers);
  for (double p : c.p_grid) out.moments.push_back(power_mean_estimate(out.samples.norms, p));
  return out;
}

ScenarioReport start_report(const ExperimentConfig& c) {
  c.validate();
  ScenarioReport r;
  r.name = c.scenario;
  r.config = c;
  return r;
}

// (a) exact power-mean monotonicity, (b) ratio_p ≤ ratio_1·(1 + 3·combined rse).
void envelope_verdicts(ScenarioReport& r, const std::vector<dist::MomentValue>& moments,
                       const std::vector<double>& ratios, const std::string& invariant) {
  const auto& p = r.config.p_grid;
  for (std::size_t i = 1; i < moments.size(); ++i) {
    if (p[i] < p[i - 1]) continue;
    r.verdicts.push_back(make_verdict(
        "power-mean monotone p=" + fmt(p[i - 1]) + "->" + fmt(p[i]),
        "sample power means are non-decreasing in p", moments[i].value >= moments[i - 1].value,
        moments[i].value, moments[i - 1].value, "exact"));
  }
  std::size_t base = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < p[base]) base = i;
  }
  for (std::size_t i = 0; i < moments.size(); ++i) {
    if (i == base) continue;
    const std::string item = "envelope p=" + fmt(p[i]);
    if (!(moments[base].value > 0.0)) {
      r.verdicts.push_back({item, invariant, Status::Inconclusive, ratios[i], ratios[base], "3 se",
                            "degenerate base moment"});
      continue;
    }
    const double rse = combined_rse(moments[i], moments[base]);
    const double limit = ratios[base] * (1.0 + 3.0 * rse);
    r.verdicts.push_back(make_verdict(item, invariant, ratios[i] <= limit, ratios[i], limit,
                                      "3 se (combined relative se " + fmt(rse) + ")",
                                      "base p=" + fmt(p[base]) + " ratio " + fmt(ratios[base])));
  }
}

void add_moment_rows(ScenarioReport& r, const Cell& cell, const std::vector<double>& ratios) {
  for (std::size_t i = 0; i < cell.moments.size(); ++i) {
    r.moments.push_back({r.name, cell.B.rows(), r.config.n, cell.B.cols(), r.config.p_grid[i],
                         cell.moments[i].value, cell.moments[i].std_error, ratios[i]});
  }
  r.convergence_warnings += cell.samples.convergence_warnings;
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

void ExperimentConfig::validate() const {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), scenario) == names.end()) {
    throw ConfigError("unknown scenario '" + scenario + "'");
  }
  if (trials < 50) throw ConfigError("trials must be at least 50, got " + std::to_string(trials));
  if (n == 0) throw ConfigError("n must be at least 1");
  if (p_grid.empty()) throw ConfigError("p grid is empty");
  for (double p : p_grid) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("p grid entries must be finite and >= 1");
  }
  for (std::size_t N : N_grid) {
    if (N == 0) throw ConfigError("N grid entries must be positive");
  }
  if (!(C_split > 0.0) || !(C_trunc > 0.0)) throw ConfigError("C_split and C_trunc must be positive");
  try {
    dist::validate(dist);
    constants.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"lemmas", "scaling", "moments",
                                              "tails", "small-columns", "almost-square"};
  return names;
}

ExperimentConfig default_config(std::string_view scenario) {
  ExperimentConfig c;
  c.scenario = std::string(scenario);
  c.dist = dist::ScalarDistribution::laplace(1.0);
  c.shaper.kind = ShaperKind::PartialIsometry;
  if (scenario == "lemmas") {
    c.n = 8;
    c.trials = 2000;
    c.shaper = {ShaperKind::PartialIsometry, 8, 32, 1, std::nullopt};
  } else if (scenario == "scaling") {
    c.n = 32;
    c.trials = 200;
    c.N_grid = {32, 128, 512, 2048};
    c.shaper = {ShaperKind::PartialIsometry, 32, 32, 1, std::nullopt};
  } else if (scenario == "moments") {
    c.n = 16;
    c.trials = 2000;
    c.p_grid = {1, 2, 4, 8};
    c.shaper = {ShaperKind::PartialIsometry, 16, 64, 1, std::nullopt};
  } else if (scenario == "tails") {
    c.n = 8;
    c.trials = 20000;
    c.shaper = {ShaperKind::PartialIsometry, 8, 32, 1, std::nullopt};
  } else if (scenario == "small-columns") {
    c.n = 8;
    c.trials = 1000;
    c.p_grid = {1, 2, 4, 8};
    c.shaper = {ShaperKind::ReplicatedAverage, 8, 8, 1, std::nullopt};
  } else if (scenario == "almost-square") {
    c.n = 16;
    c.trials = 1000;
    c.p_grid = {1, 2, 4};
    c.shaper = {ShaperKind::PartialIsometry, 16, 256, 1, std::nullopt};
  } else {
    throw ConfigError("unknown scenario '" + std::string(scenario) + "'");
  }
  return c;
}

std::string_view status_name(Status s) noexcept {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Verdict make_verdict(std::string item, std::string invariant, bool pass, double observed,
                     double limit, std::string tolerance, std::string detail) {
  return {std::move(item),  std::move(invariant), pass ? Status::Pass : Status::Fail, observed,
          limit,            std::move(tolerance), std::move(detail)};
}

bool ScenarioReport::failed() const noexcept {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.status == Status::Fail; });
}

bool RunReport::failed() const noexcept {
  return std::any_of(scenarios.begin(), scenarios.end(),
                     [](const ScenarioReport& s) { return s.failed(); });
}

std::string_view library_version() noexcept { return RMLAB_VERSION; }

double power_mean(std::span<const double> xs, double p) {
  if (xs.empty()) throw InsufficientDataError("power_mean: empty sample");
  if (!(p >= 1.0)) throw ParameterError("power_mean: p must be >= 1");
  double peak = 0.0;
  for (double x : xs) peak = std::max(peak, std::fabs(x));
  if (peak == 0.0) return 0.0;
  CompensatedSum s;
  for (double x : xs) s.add(std::pow(std::fabs(x) / peak, p));
  return peak * std::pow(s.value() / static_cast<double>(xs.size()), 1.0 / p);
}

dist::MomentValue power_mean_estimate(std::span<const double> xs, double p) {
  if (xs.size() < kBatchCount) {
    throw InsufficientDataError("power_mean_estimate: need at least " + std::to_string(kBatchCount) +
                                " samples");
  }
  dist::MomentValue v{p, power_mean(xs, p), dist::MomentMethod::MonteCarlo, 0.0};
  std::vector<double> batch(kBatchCount);
  for (std::size_t b = 0; b < kBatchCount; ++b) {
    const std::size_t lo = b * xs.size() / kBatchCount;
    const std::size_t hi = (b + 1) * xs.size() / kBatchCount;
    batch[b] = power_mean(xs.subspan(lo, hi - lo), p);
  }
  const double k = static_cast<double>(kBatchCount);
  const double mean = compensated_sum(batch) / k;
  CompensatedSum ss;
  for (double x : batch) ss.add((x - mean) * (x - mean));
  v.std_error = std::sqrt(ss.value() / (k - 1.0) / k);
  return v;
}

NormSamples sample_norms(const Matrix& B, std::size_t n, const dist::ScalarDistribution& law,
                         std::size_t trials, SeedStream stream, linalg::NormMethod method,
                         std::size_t workers) {
  dist::validate(law);
  NormSamples out;
  out.norms.resize(trials);
  std::vector<char> converged(trials, 1);
  detail::parallel_for(trials, workers, [&](std::size_t t) {
    Rng rng(stream.child(t));
    Matrix A(B.cols(), n);
    dist::sample_into(law, rng, A.data());
    const auto est = linalg::spectral_norm(linalg::matmul(B, A), method);
    out.norms[t] = est.value;
    converged[t] = est.converged ? 1 : 0;
  });
  out.convergence_warnings = static_cast<std::size_t>(std::count(converged.begin(), converged.end(), 0));
  return out;
}

std::vector<dist::MomentValue> estimate_norm_moments(const ExperimentConfig& config) {
  config.validate();
  return run_cell(config, scenario_shaper(config), 0).moments;
}

ScenarioReport run_scaling_in_N(const ExperimentConfig& config) {
  ScenarioReport r = start_report(config);
  if (config.N_grid.empty()) throw ConfigError("scaling: N grid is empty");
  ExperimentConfig c = config;
  c.p_grid = {1.0};
  r.config.p_grid = c.p_grid;
  const double psi = dist::psi_norm(c.dist, 1);
  std::vector<dist::MomentValue> means;
  for (std::size_t i = 0; i < c.N_grid.size(); ++i) {
    ShaperSpec spec = scenario_shaper(c);
    spec.kind = ShaperKind::PartialIsometry;
    spec.N = c.N_grid[i];
    const Cell cell = run_cell(c, spec, i);
    const double scale = (std::sqrt(static_cast<double>(spec.m)) + std::sqrt(static_cast<double>(c.n))) * psi;
    add_moment_rows(r, cell, {safe_ratio(cell.moments[0].value, scale)});
    means.push_back(cell.moments[0]);
  }
  const auto [lo, hi] = std::minmax_element(means.begin(), means.end(),
                                            [](const auto& a, const auto& b) { return a.value < b.value; });
  if (!(lo->value > 0.0)) {
    r.verdicts.push_back({"N-flatness", "E||BA|| does not depend on N", Status::Inconclusive, 0.0, 0.25,
                          "25% + 3 se", "degenerate estimates"});
    return r;
  }
  const double spread = (hi->value - lo->value) / lo->value;
  const double rse = combined_rse(*hi, *lo);
  const double limit = 0.25 + 3.0 * rse;
  r.metrics["relative_spread"] = spread;
  r.metrics["combined_relative_se"] = rse;
  r.verdicts.push_back(make_verdict("N-flatness", "E||BA|| does not depend on N", spread <= limit, spread,
                                    limit, "25% + 3 se (combined relative se " + fmt(rse) + ")",
                                    "min " + fmt(lo->value) + ", max " + fmt(hi->value)));
  return r;
}

ScenarioReport run_moment_growth(const ExperimentConfig& config) {
  ScenarioReport r = start_report(config);
  if (config.trials < 1000) throw ConfigError("moments: needs at least 1000 trials");
  for (double p : config.p_grid) {
    if (p > 16.0) throw ConfigError("moments: p grid must lie in [1, 16]");
  }
  const ShaperSpec spec = scenario_shaper(config);
  const Cell cell = run_cell(config, spec, 0);
  const double psi = dist::psi_norm(config.dist, 1);
  const double rootsum = std::sqrt(static_cast<double>(cell.B.rows())) + std::sqrt(static_cast<double>(config.n));
  std::vector<double> ratios;
  for (std::size_t i = 0; i < cell.moments.size(); ++i) {
    ratios.push_back(safe_ratio(cell.moments[i].value, rootsum * config.p_grid[i] * psi));
  }
  add_moment_rows(r, cell, ratios);
  r.metrics["psi1"] = psi;
  envelope_verdicts(r, cell.moments, ratios, "(E||W||^p)^(1/p) grows at most linearly in p");
  return r;
}

ScenarioReport run_tail_decay(const ExperimentConfig& config) {
  ScenarioReport r = start_report(config);
  if (config.trials < 10000) throw ConfigError("tails: needs at least 10000 trials");
  const Cell cell = run_cell(config, scenario_shaper(config), 0);
  add_moment_rows(r, cell, std::vector<double>(cell.moments.size(), 0.0));
  const std::string invariant = "||W|| has a subexponential tail";
  std::vector<double> sorted = cell.samples.norms;
  std::sort(sorted.begin(), sorted.end());
  const auto quantile = [&](double q) {
    return sorted[static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1))];
  };
  const double lo = quantile(0.5);
  const double hi = quantile(0.999);
  if (!(hi > lo)) {
    r.verdicts.push_back({"tail fit", invariant, Status::Inconclusive, 0.0, 0.9, "r^2 >= 0.9",
                          "degenerate sample"});
    return r;
  }
  // 40 thresholds strictly between the median and the 0.999 quantile.
  std::vector<double> thresholds;
  for (int i = 1; i <= 40; ++i) thresholds.push_back(lo + (hi - lo) * i / 41.0);
  r.tail = bounds::empirical_tail(cell.samples.norms, thresholds);
  try {
    const auto fit = bounds::fit_tail_rate(*r.tail, 1e-3);
    r.tail_fit = fit;
    r.metrics["slope"] = fit.slope;
    r.metrics["r_squared"] = fit.r_squared;
    r.verdicts.push_back(make_verdict("tail slope", invariant, fit.slope < 0.0, fit.slope, 0.0, "exact"));
    r.verdicts.push_back(make_verdict("tail fit", invariant, fit.r_squared >= 0.9, fit.r_squared, 0.9,
                                      "r^2 >= 0.9", std::to_string(fit.points_used) + " points"));
  } catch (const InsufficientDataError& e) {
    r.verdicts.push_back({"tail fit", invariant, Status::Inconclusive, 0.0, 0.9, "r^2 >= 0.9", e.what()});
  }
  return r;
}

std::size_t small_columns_k(std::size_t n, double C_split) {
  if (n == 0) throw ConfigError("small_columns_k: n must be at least 1");
  if (!(C_split > 0.0)) throw ConfigError("small_columns_k: C must be positive");
  const double l = std::max(std::log(static_cast<double>(n)), 1.0);
  const double nn = static_cast<double>(n);
  const double k = std::ceil(std::pow(l, 5.0) * nn * nn / (C_split * C_split));
  if (!(k <= static_cast<double>(kMaxColumns))) throw ConfigError("small_columns_k: k too large");
  return static_cast<std::size_t>(k);
}

ScenarioReport run_regime_small_columns(const ExperimentConfig& config) {
  ScenarioReport r = start_report(config);
  const std::size_t n = config.n;
  const std::size_t k = config.k.value_or(small_columns_k(n, config.C_split));
  if (k == 0 || k > kMaxColumns / n) throw ConfigError("small-columns: N = k*n exceeds 1e6");
  ShaperSpec spec{ShaperKind::ReplicatedAverage, n, k * n, k, std::nullopt};
  r.config.shaper = spec;
  r.config.k = k;
  const Cell cell = run_cell(r.config, spec, 0);
  const double threshold = decomp::split_threshold(n, config.C_split);
  const auto norms = linalg::column_norms(cell.B);
  const double widest = *std::max_element(norms.begin(), norms.end());
  r.verdicts.push_back(make_verdict("column-norm premise", "every column of B is at most the split threshold",
                                    widest <= threshold, widest, threshold, "exact",
                                    "k = " + std::to_string(k)));
  std::vector<double> ratios;
  for (std::size_t i = 0; i < cell.moments.size(); ++i) {
    ratios.push_back(cell.moments[i].value / (std::sqrt(static_cast<double>(n)) * config.p_grid[i]));
  }
  add_moment_rows(r, cell, ratios);
  r.metrics["k"] = static_cast<double>(k);
  r.metrics["split_threshold"] = threshold;
  envelope_verdicts(r, cell.moments, ratios, "(E||BA||^p)^(1/p) <= C sqrt(n) p for small columns");
  return r;
}

ScenarioReport run_regime_almost_square(const ExperimentConfig& config) {
  ScenarioReport r = start_report(config);
  for (double p : config.p_grid) {
    if (p > 8.0) throw ConfigError("almost-square: p grid must lie in [1, 8]");
  }
  ShaperSpec spec = scenario_shaper(config);
  spec.kind = ShaperKind::PartialIsometry;
  spec.m = config.n;
  const double n = static_cast<double>(config.n);
  if (spec.N < config.n || static_cast<double>(spec.N) > n * n * n) {
    throw ConfigError("almost-square: N must lie in [n, n^3]");
  }
  r.config.shaper = spec;
  const Cell cell = run_cell(r.config, spec, 0);
  std::vector<double> ratios;
  for (std::size_t i = 0; i < cell.moments.size(); ++i) {
    const double p = config.p_grid[i];
    ratios.push_back(cell.moments[i].value / std::sqrt(n * p));
    r.metrics["envelope_tightening_p=" + fmt(p)] = (std::sqrt(n) * p) / std::sqrt(n * p);
  }
  add_moment_rows(r, cell, ratios);
  envelope_verdicts(r, cell.moments, ratios, "(E||BA||^p)^(1/p) <= C sqrt(n p) for almost-square B");
  return r;
}

ScenarioReport run_lemma_suite(const ExperimentConfig& config) {
  ScenarioReport r = start_report(config);
  const SeedStream s = root_stream(config).child(kLemmaTag);
  const auto append = [&](std::vector<Verdict> v) {
    r.verdicts.insert(r.verdicts.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  };
  append(check_renyi(s.child(1)));
  append(check_harmonic(s.child(2)));
  append(check_nets(s.child(3)));
  append(check_identities(s.child(4)));
  append(check_envelopes(s.child(5), config.constants));
  append(check_moment_to_tail(s.child(6), config.constants));
  append(check_coupling(s.child(7)));
  append(check_conditional_mean(s.child(8)));
  append(check_symmetrization(s.child(9)));
  append(check_xi_envelope(s.child(10), 8, config.C_trunc));
  return r;
}

ScenarioReport run_scenario(const ExperimentConfig& config) {
  const auto& s = config.scenario;
  if (s == "lemmas") return run_lemma_suite(config);
  if (s == "scaling") return run_scaling_in_N(config);
  if (s == "moments") return run_moment_growth(config);
  if (s == "tails") return run_tail_decay(config);
  if (s == "small-columns") return run_regime_small_columns(config);
  if (s == "almost-square") return run_regime_almost_square(config);
  throw ConfigError("unknown scenario '" + s + "'");
}

}  // namespace rmlab::harness
