#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmlab/bounds.hpp"
#include "rmlab/distributions.hpp"
#include "rmlab/linalg.hpp"
#include "rmlab/shaper.hpp"

namespace rmlab::harness {

struct ExperimentConfig {
  std::string scenario = "moments";
  ShaperSpec shaper;
  /// Columns of A (and of W = BA).
  std::size_t n = 16;
  dist::ScalarDistribution dist = dist::ScalarDistribution::laplace(1.0);
  std::size_t trials = 200;
  std::vector<double> p_grid{1.0};
  std::vector<std::size_t> N_grid;
  std::uint64_t seed = 7;
  std::string out = "rmlab-out";
  bounds::BoundConstants constants;
  double C_split = 1.0;
  double C_trunc = 1.0;
  /// Replication factor override for the small-columns scenario.
  std::optional<std::size_t> k;
  linalg::NormMethod norm_method = linalg::NormMethod::Power;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  std::size_t workers = 0;

  /// ConfigError on trials < 50, p < 1, empty or zero grids.
  void validate() const;
};

/// Defaults for `lemmas`, `scaling`, `moments`, `tails`, `small-columns`,
/// `almost-square`.
[[nodiscard]] ExperimentConfig default_config(std::string_view scenario);
[[nodiscard]] const std::vector<std::string>& scenario_names();

enum class Status { Pass, Fail, Inconclusive };
[[nodiscard]] std::string_view status_name(Status s) noexcept;

/// One checked claim, with the numbers and slack used to decide it.
struct Verdict {
  std::string item;
  std::string invariant;
  Status status = Status::Inconclusive;
  double observed = 0.0;
  double limit = 0.0;
  std::string tolerance;
  std::string detail;
};

[[nodiscard]] Verdict make_verdict(std::string item, std::string invariant, bool pass,
                                   double observed, double limit, std::string tolerance,
                                   std::string detail = {});

struct MomentRow {
  std::string scenario;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t N = 0;
  double p = 1.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double ratio = 0.0;
};

struct ScenarioReport {
  std::string name;
  ExperimentConfig config;
  std::vector<MomentRow> moments;
  std::optional<bounds::TailCurve> tail;
  std::optional<bounds::TailFit> tail_fit;
  std::vector<Verdict> verdicts;
  std::map<std::string, double> metrics;
  std::size_t convergence_warnings = 0;

  [[nodiscard]] bool failed() const noexcept;
};

struct RunReport {
  std::string version;
  std::uint64_t master_seed = 0;
  std::vector<ScenarioReport> scenarios;
  /// Not serialized into report.json (it would break byte-identical
  /// reruns); emitted to timing.json instead.
  double wall_clock_seconds = 0.0;

  [[nodiscard]] bool failed() const noexcept;
};

[[nodiscard]] std::string_view library_version() noexcept;

/// (mean |x|^p)^{1/p}, computed relative to max |x| to avoid overflow.
[[nodiscard]] double power_mean(std::span<const double> xs, double p);

inline constexpr std::size_t kBatchCount = 20;

/// Power mean with a batch-means standard error over 20 contiguous batches.
[[nodiscard]] dist::MomentValue power_mean_estimate(std::span<const double> xs, double p);

struct NormSamples {
  std::vector<double> norms;  ///< ‖W‖ per trial, in trial order
  std::size_t convergence_warnings = 0;
};

/// ‖BA‖ for `trials` independent draws of A (B.cols() × n) from `law`;
/// trial t uses stream.child(t). Trials may run on several threads; results
/// are stored by trial index.
[[nodiscard]] NormSamples sample_norms(const Matrix& B, std::size_t n,
                                       const dist::ScalarDistribution& law, std::size_t trials,
                                       SeedStream stream, linalg::NormMethod method,
                                       std::size_t workers);

/// Per-p power-mean estimates of ‖BA‖ with B built from config.shaper.
[[nodiscard]] std::vector<dist::MomentValue> estimate_norm_moments(const ExperimentConfig& config);

[[nodiscard]] ScenarioReport run_scaling_in_N(const ExperimentConfig& config);
[[nodiscard]] ScenarioReport run_moment_growth(const ExperimentConfig& config);
[[nodiscard]] ScenarioReport run_tail_decay(const ExperimentConfig& config);
[[nodiscard]] ScenarioReport run_regime_small_columns(const ExperimentConfig& config);
[[nodiscard]] ScenarioReport run_regime_almost_square(const ExperimentConfig& config);
[[nodiscard]] ScenarioReport run_lemma_suite(const ExperimentConfig& config);

/// Dispatch on config.scenario.
[[nodiscard]] ScenarioReport run_scenario(const ExperimentConfig& config);

/// Replication factor ⌈max(ln n, 1)⁵·n²/C²⌉ that puts every column of the
/// replicated-average shaper at or below split_threshold(n, C).
[[nodiscard]] std::size_t small_columns_k(std::size_t n, double C_split);

}  // namespace rmlab::harness
