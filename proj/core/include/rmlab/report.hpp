#pragma once

#include <filesystem>
#include <string>

#include "rmlab/harness.hpp"

namespace rmlab::harness {

/// Full structured report as JSON text (sorted keys, shortest round-trip
/// doubles). A pure function of the report contents.
[[nodiscard]] std::string report_json(const RunReport& report);

/// Writes report.json, timing.json and one CSV per non-empty table into
/// `dir` (created if needed):
///   moments.csv    scenario,m,n,N,p,estimate,std_error,ratio
///   tail_curve.csv threshold,survival,ci_low,ci_high,n
///   verdicts.csv   scenario,item,status,observed,limit,tolerance
/// IoError carries the failing path.
void emit_report(const RunReport& report, const std::filesystem::path& dir);

/// ExperimentConfig <-> JSON text.
[[nodiscard]] std::string config_json(const ExperimentConfig& config);
/// Missing keys keep the scenario defaults; ConfigError on bad values.
[[nodiscard]] ExperimentConfig parse_config_json(const std::string& text);

}  // namespace rmlab::harness
