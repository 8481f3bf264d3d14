#include <string>

#include "detail/config_json.hpp"
#include "rmlab/error.hpp"
#include "rmlab/report.hpp"

namespace rmlab::harness {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("shaper.matrix must be a non-empty array of rows");
  const std::size_t cols = j.front().size();
  std::vector<double> entries;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw ConfigError("shaper.matrix rows must have equal length");
    for (const auto& x : row) entries.push_back(x.get<double>());
  }
  return Matrix(j.size(), cols, std::move(entries));
}

linalg::NormMethod parse_norm_method(const std::string& s) {
  if (s == "power") return linalg::NormMethod::Power;
  if (s == "exact") return linalg::NormMethod::Exact;
  throw ConfigError("norm_method must be 'power' or 'exact', got '" + s + "'");
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

ExperimentConfig from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"scenario", "shaper", "n", "dist", "trials", "p_grid", "N_grid", "seed", "out", "constants",
                  "C_split", "C_trunc", "k", "norm_method", "workers"},
                 "config");
  ExperimentConfig c = default_config(j.value("scenario", std::string("moments")));
  if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
  if (j.contains("dist")) c.dist = dist::parse(j.at("dist").get<std::string>());
  if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
  if (j.contains("p_grid")) c.p_grid = j.at("p_grid").get<std::vector<double>>();
  if (j.contains("N_grid")) c.N_grid = j.at("N_grid").get<std::vector<std::size_t>>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  if (j.contains("C_split")) c.C_split = j.at("C_split").get<double>();
  if (j.contains("C_trunc")) c.C_trunc = j.at("C_trunc").get<double>();
  if (j.contains("k") && !j.at("k").is_null()) c.k = j.at("k").get<std::size_t>();
  if (j.contains("norm_method")) c.norm_method = parse_norm_method(j.at("norm_method").get<std::string>());
  if (j.contains("workers")) c.workers = j.at("workers").get<std::size_t>();
  if (j.contains("constants")) {
    const auto& k = j.at("constants");
    reject_unknown(k, {"c_bernstein", "c0_gauss", "C_moment_tail", "c_subexp"}, "constants");
    c.constants.c_bernstein = k.value("c_bernstein", c.constants.c_bernstein);
    c.constants.c0_gauss = k.value("c0_gauss", c.constants.c0_gauss);
    c.constants.C_moment_tail = k.value("C_moment_tail", c.constants.C_moment_tail);
    c.constants.c_subexp = k.value("c_subexp", c.constants.c_subexp);
  }
  if (j.contains("shaper")) {
    const auto& s = j.at("shaper");
    reject_unknown(s, {"kind", "m", "N", "k", "matrix"}, "shaper");
    if (s.contains("kind")) c.shaper.kind = parse_shaper_kind(s.at("kind").get<std::string>());
    c.shaper.m = s.value("m", c.shaper.m);
    c.shaper.N = s.value("N", c.shaper.N);
    c.shaper.k = s.value("k", c.shaper.k);
    if (s.contains("matrix")) c.shaper.matrix = matrix_from_json(s.at("matrix"));
  } else if (j.contains("n")) {
    c.shaper.m = c.n;
  }
  c.validate();
  return c;
}

}  // namespace

namespace detail {

nlohmann::json config_to_json(const ExperimentConfig& c, bool echo) {
  json j;
  j["scenario"] = c.scenario;
  j["n"] = c.n;
  j["dist"] = dist::to_string(c.dist);
  j["trials"] = c.trials;
  j["p_grid"] = c.p_grid;
  j["N_grid"] = c.N_grid;
  j["seed"] = c.seed;
  j["C_split"] = c.C_split;
  j["C_trunc"] = c.C_trunc;
  j["k"] = c.k ? json(*c.k) : json(nullptr);
  j["norm_method"] = c.norm_method == linalg::NormMethod::Power ? "power" : "exact";
  j["constants"] = {{"c_bernstein", c.constants.c_bernstein},
                    {"c0_gauss", c.constants.c0_gauss},
                    {"C_moment_tail", c.constants.C_moment_tail},
                    {"c_subexp", c.constants.c_subexp}};
  json s{{"kind", shaper_kind_name(c.shaper.kind)}, {"m", c.shaper.m}, {"N", c.shaper.N}, {"k", c.shaper.k}};
  if (c.shaper.matrix) s["matrix"] = matrix_to_json(*c.shaper.matrix);
  j["shaper"] = std::move(s);
  if (!echo) {
    j["out"] = c.out;
    j["workers"] = c.workers;
  }
  return j;
}

}  // namespace detail

std::string config_json(const ExperimentConfig& config) {
  return detail::config_to_json(config, false).dump(2) + "\n";
}

ExperimentConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return from_json(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  } catch (const ShapeError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace rmlab::harness
