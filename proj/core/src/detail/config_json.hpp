#pragma once

#include <json.hpp>

#include "rmlab/harness.hpp"

namespace rmlab::harness::detail {

// `echo` drops the fields that do not affect results (out, workers), so
// the copy embedded in report.json is independent of where it was written.
[[nodiscard]] nlohmann::json config_to_json(const ExperimentConfig& c, bool echo);

}  // namespace rmlab::harness::detail
