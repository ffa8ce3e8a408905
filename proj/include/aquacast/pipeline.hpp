// Copyright 2026 The Aquacast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aquacast/engine.hpp"
#include "aquacast/report.hpp"
#include "aquacast/tables.hpp"

namespace aquacast {

/// A configuration constraint violation tied to one field.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)), message_(message) {}
  const std::string& field() const { return field_; }
  const std::string& message() const { return message_; }

 private:
  std::string field_;
  std::string message_;
};

struct RunConfig {
  std::vector<GrowthCase> growth{kGrowthCases.begin(), kGrowthCases.end()};
  std::vector<ScenarioKind> scenarios{kScenarioKinds.begin(), kScenarioKinds.end()};
  int year_start = kFirstYear;
  int year_end = kLastYear;
  std::optional<double> beta;
  std::optional<CostBand> cost;
  OutputFormat format = OutputFormat::csv;
  std::string out;  // empty: nothing written
};

inline void validate(const RunConfig& c) {
  if (c.growth.empty()) throw ConfigError("growth", "at least one growth case required");
  if (c.scenarios.empty()) throw ConfigError("scenarios", "at least one scenario required");
  if (c.year_start < kFirstYear || c.year_end > kLastYear || c.year_start > c.year_end)
    throw ConfigError("years", "range must lie within " + std::to_string(kFirstYear) + "-" +
                                   std::to_string(kLastYear) + " with start <= end");
  if (c.beta && !(*c.beta >= 1)) throw ConfigError("peaking", "peaking factor must be >= 1");
  if (c.cost && !(c.cost->low > 0 && c.cost->low <= c.cost->high))
    throw ConfigError("cost", "cost band requires 0 < low <= high");
}

namespace detail {

template <typename T, typename Parse>
std::vector<T> enum_list(const json& v, const char* key, Parse&& parse) {
  std::vector<T> out;
  auto add = [&](const json& item) {
    if (!item.is_string()) throw ConfigError(key, "expected a string or array of strings");
    T t;
    try {
      t = parse(item.get<std::string>());
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(key, e.what());
    }
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  };
  if (v.is_array()) {
    for (const json& item : v) add(item);
  } else {
    add(v);
  }
  return out;
}

inline double config_number(const json& v, const char* key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

inline CostBand cost_from_json(const json& v, const char* key) {
  if (v.is_array() && v.size() == 2) return {config_number(v[0], key), config_number(v[1], key)};
  if (v.is_object()) {
    for (const auto& [k, _] : v.items())
      if (k != "low" && k != "high") throw ConfigError(key, "unknown key '" + k + "'");
    if (!v.contains("low") || !v.contains("high")) throw ConfigError(key, "low and high required");
    return {config_number(v["low"], key), config_number(v["high"], key)};
  }
  throw ConfigError(key, "expected [low, high] or {\"low\", \"high\"}");
}

inline std::pair<int, int> years_from_json(const json& v, const char* key) {
  auto whole = [&](const json& x) {
    if (!x.is_number_integer()) throw ConfigError(key, "years must be integers");
    return x.get<int>();
  };
  if (v.is_array() && v.size() == 2) return {whole(v[0]), whole(v[1])};
  if (v.is_object()) {
    for (const auto& [k, _] : v.items())
      if (k != "start" && k != "end") throw ConfigError(key, "unknown key '" + k + "'");
    return {whole(v.value("start", json(kFirstYear))), whole(v.value("end", json(kLastYear)))};
  }
  throw ConfigError(key, "expected [start, end] or {\"start\", \"end\"}");
}

inline std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

/// Builds a config from a JSON object, applying defaults for absent keys.
inline RunConfig config_from_json(const json& j) {
  RunConfig c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "growth") {
      c.growth = detail::enum_list<GrowthCase>(v, "growth", [](const std::string& s) { return parse_growth(s); });
    } else if (key == "scenarios") {
      c.scenarios = detail::enum_list<ScenarioKind>(v, "scenarios", [](const std::string& s) { return parse_scenario(s); });
    } else if (key == "years") {
      std::tie(c.year_start, c.year_end) = detail::years_from_json(v, "years");
    } else if (key == "peaking") {
      c.beta = detail::config_number(v, "peaking");
    } else if (key == "cost") {
      c.cost = detail::cost_from_json(v, "cost");
    } else if (key == "format") {
      if (!v.is_string()) throw ConfigError("format", "expected a string");
      try {
        c.format = parse_format(v.get<std::string>());
      } catch (const Error& e) {
        throw ConfigError("format", e.what());
      }
    } else if (key == "out") {
      if (!v.is_string()) throw ConfigError("out", "expected a string");
      c.out = v.get<std::string>();
    } else {
      throw ConfigError(key, "unknown configuration key");
    }
  }
  validate(c);
  return c;
}

/// Parses config text.  Blank input yields the defaults; syntax errors
/// carry line and column.
inline RunConfig parse_config(const std::string& text, const std::string& origin = "config") {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return RunConfig{};
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(origin + ": parse error at " + detail::position_of(text, e.byte));
  }
  return config_from_json(j);
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

/// Dataset water parameters with the config's overrides applied.
inline WaterParameters resolve_parameters(const RunConfig& c, const WaterParameters& base) {
  WaterParameters p = base;
  if (c.beta) p.peaking.beta = *c.beta;
  if (c.cost) p.cost = *c.cost;
  return p;
}

/// Evaluates every selected (scenario, growth) pair concurrently.  Output
/// order follows the config: scenarios outer, growth cases inner.
inline std::vector<ProjectionReport> run_pipeline(const RunConfig& c, const Engine& e) {
  validate(c);
  WaterParameters p = resolve_parameters(c, e.data.water);
  std::vector<std::future<ProjectionReport>> jobs;
  for (ScenarioKind k : c.scenarios)
    for (GrowthCase g : c.growth)
      jobs.push_back(std::async(std::launch::async, [&e, p, k, g, &c] {
        return e.run(k, g, p, c.year_start, c.year_end);
      }));
  std::vector<ProjectionReport> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

/// The full 5 x 3 grid over all years under the config's parameters; the
/// published table layouts need every pair.
inline ReportGrid run_grid(const RunConfig& c, const Engine& e) {
  RunConfig full = c;
  full.growth.assign(kGrowthCases.begin(), kGrowthCases.end());
  full.scenarios.assign(kScenarioKinds.begin(), kScenarioKinds.end());
  full.year_start = kFirstYear;
  full.year_end = kLastYear;
  ReportGrid g;
  for (auto& r : run_pipeline(full, e)) g[{r.kind, r.growth}] = std::move(r);
  return g;
}

inline std::string report_filename(const ProjectionReport& r, OutputFormat f) {
  return "report_" + r.scenario + "_" + std::string(to_string(r.growth)) + std::string(extension_of(f));
}

/// Writes one file per report, one per table, and headline.json.  Returns
/// the written paths in write order.
inline std::vector<std::filesystem::path> emit(const std::vector<ProjectionReport>& reports,
                                               const std::map<std::string, Table>& tables,
                                               const ordered_json& headline, OutputFormat f,
                                               const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<fs::path> written;
  auto put = [&](const fs::path& p, const std::string& body) {
    std::ofstream o(p, std::ios::binary | std::ios::trunc);
    o << body;
    o.close();
    if (!o) throw Error("write failed: " + p.string());
    written.push_back(p);
  };
  for (const auto& r : reports) put(dir / report_filename(r, f), render_report(r, f));
  for (const auto& [id, t] : tables) put(dir / (id + std::string(extension_of(f))), render_table(t, f));
  put(dir / "headline.json", headline.dump(2) + "\n");
  return written;
}

/// Runs the config end to end and writes its outputs to `c.out`.
inline std::vector<std::filesystem::path> run_and_emit(const RunConfig& c, const Engine& e) {
  if (c.out.empty()) throw ConfigError("out", "output directory required");
  auto reports = run_pipeline(c, e);
  ReportGrid grid = run_grid(c, e);
  auto tables = build_tables(e, grid);
  return emit(reports, tables, headline_json(grid, e.data.water.benchmarks), c.format, c.out);
}

}  // namespace aquacast
