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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "aquacast/energy.hpp"
#include "aquacast/operators.hpp"
#include "aquacast/water.hpp"
#include "aquacast/wue.hpp"
#include "json.hpp"

#ifndef AQUACAST_DEFAULT_DATA_DIR
#define AQUACAST_DEFAULT_DATA_DIR "data"
#endif

namespace aquacast {

/// Missing, unreadable or schema-invalid dataset.
class DatasetError : public Error {
 public:
  explicit DatasetError(const std::string& what) : Error(what) {}
};

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct GoldenRow {
  std::string label;
  std::vector<std::string> cells;
};

/// A published table stored cell-for-cell as display strings.
struct GoldenTable {
  std::string id;
  std::string title;
  std::vector<std::string> columns;
  std::vector<GoldenRow> rows;
};

struct Datasets {
  std::filesystem::path dir;
  EnergyAnchors energy;
  WueDataset wue;
  WaterParameters water;
  std::vector<OperatorRecord> operators;
  UnitSystem operator_units;
  std::map<std::string, GoldenTable> golden;
  std::map<std::string, std::string> schemas;  // file -> schema tag
  json fixtures = json::array();                // named calculator inputs
};

inline std::filesystem::path resolve_data_dir(const std::string& override_dir = "") {
  if (!override_dir.empty()) return override_dir;
  if (const char* env = std::getenv("AQUACAST_DATA_DIR"); env && *env) return env;
  return AQUACAST_DEFAULT_DATA_DIR;
}

namespace detail {

inline json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw DatasetError("cannot open dataset file " + p.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DatasetError(p.string() + ": " + e.what());
  }
}

inline const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw DatasetError(where + ": missing key '" + key + "'");
  return j.at(key);
}

inline double need_number(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number()) throw DatasetError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

inline std::map<int, double> year_map(const json& j, const std::string& where) {
  if (!j.is_object()) throw DatasetError(where + ": expected a year map");
  std::map<int, double> m;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw DatasetError(where + ": value for " + k + " must be a number");
    int y = 0;
    try {
      y = std::stoi(k);
    } catch (const std::exception&) {
      throw DatasetError(where + ": bad year key '" + k + "'");
    }
    if (y < kFirstYear || y > kLastYear) throw DatasetError(where + ": year " + k + " out of range");
    m[y] = v.get<double>();
  }
  if (m.empty()) throw DatasetError(where + ": empty year map");
  int expect = kFirstYear;
  for (const auto& [y, v] : m)
    if (y != expect++) throw DatasetError(where + ": years must be consecutive from 2024");
  return m;
}

inline void check_schema(const json& j, const std::string& expected, const std::string& file) {
  std::string got = j.value("schema", std::string());
  if (got != expected)
    throw DatasetError(file + ": schema '" + got + "' does not match expected '" + expected + "'");
}

}  // namespace detail

inline EnergyAnchors parse_energy_anchors(const json& j) {
  using namespace detail;
  const std::string f = "anchors_energy.json";
  check_schema(j, "aquacast.energy_anchors/1", f);
  EnergyAnchors a;
  const json& sa = need(j, "server_anchors", f);
  const json& years = need(sa, "anchor_years", f);
  if (!years.is_array() || years.size() != 2) throw DatasetError(f + ": anchor_years must hold two years");
  int y0 = years[0].get<int>(), y1 = years[1].get<int>();
  for (Segment s : kSegments) {
    std::string seg(to_string(s));
    const json& js = need(sa, seg.c_str(), f);
    for (int i = 0; i < 2; ++i) {
      const json& pair = need(js, i == 0 ? "low" : "high", f + ":" + seg);
      if (!pair.is_array() || pair.size() != 2)
        throw DatasetError(f + ": " + seg + " anchors must be [start, end]");
      AnchorPair ap{y0, y1, pair[0].get<double>(), pair[1].get<double>()};
      if (ap.v_start <= 0 || ap.v_end <= 0 || y1 <= y0)
        throw DatasetError(f + ": " + seg + " anchors must be positive and ordered");
      a.server[s][static_cast<std::size_t>(i)] = ap;
    }
  }
  a.storage_reported = year_map(need(need(j, "storage_pool", f), "reported", f), f + ":storage");
  a.network_reported = year_map(need(need(j, "network_pool", f), "reported", f), f + ":network");
  const json& td = need(j, "top_down", f);
  const json& te = need(td, "total_energy", f);
  const json& pue = need(td, "pue", f);
  const json& cagr = need(td, "total_energy_cagr", f);
  for (int i = 0; i < 2; ++i) {
    const char* g = i == 0 ? "low" : "high";
    a.total_energy[static_cast<std::size_t>(i)] = year_map(need(te, g, f), f + ":total_energy");
    a.pue[static_cast<std::size_t>(i)] = year_map(need(pue, g, f), f + ":pue");
    a.total_energy_cagr[static_cast<std::size_t>(i)] = need_number(cagr, g, f);
  }
  a.pue_delta = need_number(td, "pue_delta_per_year", f);
  return a;
}

inline WueDataset parse_wue_dataset(const json& j) {
  using namespace detail;
  const std::string f = "wue_scenarios.json";
  check_schema(j, "aquacast.wue_scenarios/1", f);
  WueDataset d;
  const json& sc = need(j, "scenarios", f);
  for (ScenarioKind k : {ScenarioKind::baseline, ScenarioKind::moderate, ScenarioKind::optimistic}) {
    double r = need_number(need(sc, std::string(to_string(k)).c_str(), f), "annual_reduction", f);
    if (r < 0 || r >= 1) throw DatasetError(f + ": annual_reduction must lie in [0, 1)");
    d.annual_reduction[k] = r;
  }
  d.others_wue = need_number(j, "others_wue", f);
  const json& l = need(j, "reference_lbnl", f);
  d.lbnl[0] = year_map(need(l, "low", f), f + ":lbnl.low");
  d.lbnl[1] = year_map(need(l, "high", f), f + ":lbnl.high");
  d.lbnl_delta = need_number(l, "delta_per_year", f);
  const json& ns = need(j, "reference_ns", f);
  d.ns.alpha0 = need_number(ns, "alpha0", f);
  d.ns.adoption_cagr = need_number(ns, "adoption_cagr", f);
  d.ns.wue_base = need_number(ns, "wue_base", f);
  d.ns.wue_alc = need_number(ns, "wue_alc", f);
  return d;
}

inline WaterParameters parse_water_parameters(const json& j) {
  using namespace detail;
  const std::string f = "water_parameters.json";
  check_schema(j, "aquacast.water_parameters/1", f);
  WaterParameters p;
  p.units.liters_per_gallon = need_number(j, "liters_per_gallon", f);
  p.peaking.beta = need_number(j, "peaking_factor", f);
  const json& c = need(j, "capacity_cost_per_mgd", f);
  p.cost.low = need_number(c, "low", f);
  p.cost.high = need_number(c, "high", f);
  const json& b = need(j, "national_benchmarks", f);
  p.benchmarks.public_withdrawal_mgd = need_number(b, "public_supply_withdrawal_mgd", f);
  p.benchmarks.public_consumptive_mgd = need_number(b, "public_supply_consumptive_mgd", f);
  p.default_consumptive_ratio = need_number(j, "default_consumptive_ratio", f);
  try {
    validate(p.peaking);
    validate(p.cost);
  } catch (const Error& e) {
    throw DatasetError(f + ": " + e.what());
  }
  return p;
}

inline std::vector<OperatorRecord> parse_operators(const json& j, UnitSystem* units_out = nullptr) {
  using namespace detail;
  const std::string f = "operators_2024.json";
  check_schema(j, "aquacast.operators/1", f);
  if (units_out) units_out->liters_per_gallon = need_number(j, "liters_per_gallon", f);
  std::vector<OperatorRecord> out;
  const json& ops = need(j, "operators", f);
  if (!ops.is_array() || ops.empty()) throw DatasetError(f + ": operators must be a nonempty array");
  for (const json& o : ops) {
    OperatorRecord r;
    r.id = need(o, "id", f).get<std::string>();
    std::string where = f + ":" + r.id;
    try {
      r.segment = parse_segment(need(o, "segment", where).get<std::string>());
    } catch (const DatasetError&) {
      throw;
    } catch (const Error& e) {
      throw DatasetError(where + ": " + e.what());
    }
    if (o.contains("reported")) {
      for (const auto& [k, v] : o["reported"].items()) {
        auto fld = field_from_name(k);
        if (!fld) throw DatasetError(where + ": unknown reported field '" + k + "'");
        if (!v.is_number()) throw DatasetError(where + ": field '" + k + "' must be a number");
        r.fields[*fld] = {v.get<double>(), Provenance::reported, ""};
      }
    }
    if (o.contains("params")) {
      for (const auto& [k, v] : o["params"].items()) {
        if (field_from_name(k)) throw DatasetError(where + ": param '" + k + "' shadows a field");
        if (!v.is_number()) throw DatasetError(where + ": param '" + k + "' must be a number");
        r.params[k] = v.get<double>();
      }
    }
    if (o.contains("notes"))
      for (const auto& n : o["notes"]) r.notes.push_back(n.get<std::string>());
    const json& rules = need(o, "rules", where);
    if (!rules.is_array() || rules.empty()) throw DatasetError(where + ": rules must be a nonempty array");
    for (const json& rj : rules) {
      Rule rule;
      rule.id = need(rj, "id", where).get<std::string>();
      rule.op = need(rj, "op", where).get<std::string>();
      rule.args = rj;
      r.rules.push_back(std::move(rule));
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline GoldenTable parse_golden(const json& j, const std::string& file) {
  using namespace detail;
  GoldenTable t;
  t.id = need(j, "id", file).get<std::string>();
  t.title = j.value("title", std::string());
  for (const auto& c : need(j, "columns", file)) t.columns.push_back(c.get<std::string>());
  for (const auto& r : need(j, "rows", file)) {
    GoldenRow row;
    row.label = need(r, "label", file).get<std::string>();
    for (const auto& c : need(r, "cells", file)) row.cells.push_back(c.get<std::string>());
    if (row.cells.size() != t.columns.size())
      throw DatasetError(file + ": row '" + row.label + "' width does not match columns");
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Loads every dataset file under `dir`.  Throws DatasetError on any
/// missing or malformed file.
inline Datasets load_datasets(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DatasetError("dataset directory not found: " + dir.string());
  Datasets d;
  d.dir = dir;
  auto load = [&](const char* name) {
    json j = detail::read_json_file(dir / name);
    d.schemas[name] = j.value("schema", std::string());
    return j;
  };
  try {
    d.energy = parse_energy_anchors(load("anchors_energy.json"));
    d.wue = parse_wue_dataset(load("wue_scenarios.json"));
    d.water = parse_water_parameters(load("water_parameters.json"));
    d.operators = parse_operators(load("operators_2024.json"), &d.operator_units);
  } catch (const DatasetError&) {
    throw;
  } catch (const std::exception& e) {
    throw DatasetError(std::string("dataset schema mismatch: ") + e.what());
  }
  if (fs::exists(dir / "scenario_fixtures.json")) {
    json j = load("scenario_fixtures.json");
    detail::check_schema(j, "aquacast.scenario_fixtures/1", "scenario_fixtures.json");
    d.fixtures = detail::need(j, "fixtures", "scenario_fixtures.json");
    if (!d.fixtures.is_array()) throw DatasetError("scenario_fixtures.json: fixtures must be an array");
  }
  fs::path gdir = dir / "golden";
  if (fs::is_directory(gdir)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(gdir))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
      try {
        GoldenTable t = parse_golden(detail::read_json_file(p), p.filename().string());
        d.golden[t.id] = std::move(t);
      } catch (const DatasetError&) {
        throw;
      } catch (const std::exception& e) {
        throw DatasetError(p.string() + ": " + e.what());
      }
    }
  }
  return d;
}

}  // namespace aquacast
