#include "rmlab/report.hpp"

#include <fstream>
#include <sstream>

#include "detail/config_json.hpp"
#include "detail/format.hpp"
#include "rmlab/error.hpp"

namespace rmlab::harness {

namespace {

using nlohmann::json;
using rmlab::detail::fmt;

json tail_to_json(const bounds::TailCurve& t) {
  return {{"thresholds", t.thresholds}, {"survival", t.survival}, {"ci_low", t.ci_low},
          {"ci_high", t.ci_high},       {"sample_count", t.sample_count}};
}

json scenario_to_json(const ScenarioReport& s) {
  json j;
  j["name"] = s.name;
  j["config"] = detail::config_to_json(s.config, true);
  j["moments"] = json::array();
  for (const auto& m : s.moments) {
    j["moments"].push_back({{"scenario", m.scenario}, {"m", m.m}, {"n", m.n}, {"N", m.N}, {"p", m.p},
                            {"estimate", m.estimate}, {"std_error", m.std_error}, {"ratio", m.ratio}});
  }
  j["tail"] = s.tail ? tail_to_json(*s.tail) : json(nullptr);
  j["tail_fit"] = s.tail_fit ? json{{"slope", s.tail_fit->slope},
                                    {"intercept", s.tail_fit->intercept},
                                    {"r_squared", s.tail_fit->r_squared},
                                    {"points_used", s.tail_fit->points_used}}
                             : json(nullptr);
  j["verdicts"] = json::array();
  for (const auto& v : s.verdicts) {
    j["verdicts"].push_back({{"item", v.item}, {"invariant", v.invariant}, {"status", status_name(v.status)},
                             {"observed", v.observed}, {"limit", v.limit}, {"tolerance", v.tolerance},
                             {"detail", v.detail}});
  }
  j["metrics"] = s.metrics;
  j["convergence_warnings"] = s.convergence_warnings;
  j["failed"] = s.failed();
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << text;
  os.close();
  if (!os) throw IoError("failed writing " + path.string());
}

}  // namespace

std::string report_json(const RunReport& report) {
  json j;
  j["version"] = report.version;
  j["master_seed"] = report.master_seed;
  j["failed"] = report.failed();
  j["scenarios"] = json::array();
  for (const auto& s : report.scenarios) j["scenarios"].push_back(scenario_to_json(s));
  return j.dump(2) + "\n";
}

void emit_report(const RunReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  write_file(dir / "report.json", report_json(report));
  write_file(dir / "timing.json", json{{"wall_clock_seconds", report.wall_clock_seconds}}.dump(2) + "\n");

  std::ostringstream moments;
  std::ostringstream tails;
  std::ostringstream verdicts;
  bool any_moment = false;
  bool any_verdict = false;
  const bounds::TailCurve* tail = nullptr;
  moments << "scenario,m,n,N,p,estimate,std_error,ratio\n";
  verdicts << "scenario,item,status,observed,limit,tolerance\n";
  for (const auto& s : report.scenarios) {
    for (const auto& m : s.moments) {
      any_moment = true;
      moments << csv_field(m.scenario) << ',' << m.m << ',' << m.n << ',' << m.N << ',' << fmt(m.p) << ','
              << fmt(m.estimate) << ',' << fmt(m.std_error) << ',' << fmt(m.ratio) << '\n';
    }
    for (const auto& v : s.verdicts) {
      any_verdict = true;
      verdicts << csv_field(s.name) << ',' << csv_field(v.item) << ',' << status_name(v.status) << ','
               << fmt(v.observed) << ',' << fmt(v.limit) << ',' << csv_field(v.tolerance) << '\n';
    }
    if (!tail && s.tail) tail = &*s.tail;
  }
  if (any_moment) write_file(dir / "moments.csv", moments.str());
  if (any_verdict) write_file(dir / "verdicts.csv", verdicts.str());
  if (tail) {
    bounds::write_csv(tails, *tail);
    write_file(dir / "tail_curve.csv", tails.str());
  }
}

}  // namespace rmlab::harness
