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

// Transport-free request handlers.  The HTTP server and the CLI both call
// these, so a request expressible in both yields the same payload.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "aquacast/capacity.hpp"
#include "aquacast/engine.hpp"
#include "aquacast/pipeline.hpp"
#include "aquacast/report.hpp"

#ifndef AQUACAST_VERSION
#define AQUACAST_VERSION "0.1.0"
#endif

namespace aquacast {

inline constexpr const char* kEngineVersion = AQUACAST_VERSION;

namespace api {

struct Response {
  int status = 200;
  ordered_json body;
};

/// Rejected request: 400 for malformed bodies, 422 for constraint
/// violations with one message per offending field.
class RequestError : public Error {
 public:
  RequestError(int status, const std::string& message, std::map<std::string, std::string> fields = {})
      : Error(message), status_(status), fields_(std::move(fields)) {}
  int status() const { return status_; }
  const std::map<std::string, std::string>& fields() const { return fields_; }

 private:
  int status_;
  std::map<std::string, std::string> fields_;
};

inline Response error_response(const RequestError& e) {
  ordered_json b;
  b["error"] = e.status() == 400 ? "malformed request" : "constraint violation";
  b["message"] = e.what();
  if (!e.fields().empty()) {
    ordered_json f;
    for (const auto& [k, v] : e.fields()) f[k] = v;
    b["fields"] = std::move(f);
  }
  return {e.status(), std::move(b)};
}

inline json parse_body(const std::string& body) {
  json j;
  try {
    j = body.empty() ? json::object() : json::parse(body);
  } catch (const json::parse_error& e) {
    throw RequestError(400, std::string("body is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw RequestError(400, "body must be a JSON object");
  return j;
}

/// Collects field-level violations for one request.
class Fields {
 public:
  Fields(const json& body, std::set<std::string> allowed) : body_(body) {
    for (const auto& [k, _] : body.items())
      if (!allowed.count(k)) errors_[k] = "unknown field";
  }

  std::optional<double> number(const std::string& key) {
    if (!body_.contains(key) || body_[key].is_null()) return std::nullopt;
    if (!body_[key].is_number()) {
      errors_[key] = "must be a number";
      return std::nullopt;
    }
    return body_[key].get<double>();
  }
  std::optional<std::string> string(const std::string& key) {
    if (!body_.contains(key) || body_[key].is_null()) return std::nullopt;
    if (!body_[key].is_string()) {
      errors_[key] = "must be a string";
      return std::nullopt;
    }
    return body_[key].get<std::string>();
  }
  void fail(const std::string& key, const std::string& msg) { errors_.emplace(key, msg); }
  bool failed(const std::string& key) const { return errors_.count(key) > 0; }
  void require(const std::string& key, const std::optional<double>& v) {
    if (!v && !failed(key)) fail(key, "required");
  }
  void positive(const std::string& key, const std::optional<double>& v) {
    if (v && !(*v > 0)) fail(key, "must be > 0");
  }
  void non_negative(const std::string& key, const std::optional<double>& v) {
    if (v && *v < 0) fail(key, "must be >= 0");
  }
  void unit_interval(const std::string& key, const std::optional<double>& v) {
    if (v && !(*v > 0 && *v <= 1)) fail(key, "must lie in (0, 1]");
  }
  void check() const {
    if (!errors_.empty()) throw RequestError(422, "request violates constraints", errors_);
  }

 private:
  const json& body_;
  std::map<std::string, std::string> errors_;
};

/// Engine preconditions surfacing past request validation become 422s.
template <typename F>
auto guarded(const char* field, F&& f) {
  try {
    return f();
  } catch (const RequestError&) {
    throw;
  } catch (const Error& e) {
    throw RequestError(422, e.what(), {{field, e.what()}});
  }
}

inline ordered_json trace_json(const Trace& t) {
  ordered_json a = ordered_json::array();
  for (const auto& s : t)
    a.push_back({{"label", s.label}, {"formula", s.formula}, {"value", s.value}, {"unit", s.unit}});
  return a;
}

inline ordered_json provenance_item(const std::string& value, const std::string& anchor) {
  return {{"value", value}, {"anchor", anchor}};
}

/// Named fixture whose inputs equal the request, if any.
inline std::optional<std::string> matching_fixture(const Engine& e, const std::string& calculator,
                                                   const json& input) {
  for (const json& f : e.data.fixtures)
    if (f.value("calculator", "") == calculator && f.value("input", json::object()) == input)
      return f.value("id", "") + ": " + f.value("source", "");
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// GET /api/meta

inline Response meta(const Engine& e) {
  ordered_json b;
  b["engine_version"] = kEngineVersion;
  b["data_dir"] = e.data.dir.string();
  ordered_json ds;
  for (const auto& [file, schema] : e.data.schemas) ds[file] = schema;
  b["datasets"] = std::move(ds);
  b["defaults"] = {{"beta", e.data.water.peaking.beta},
                   {"cost", {e.data.water.cost.low, e.data.water.cost.high}},
                   {"years", {kFirstYear, kLastYear}},
                   {"growth", "mid"},
                   {"scenario", "baseline"}};
  ordered_json sc = ordered_json::array();
  for (ScenarioKind k : kScenarioKinds) sc.push_back(to_string(k));
  b["scenarios"] = std::move(sc);
  ordered_json gc = ordered_json::array();
  for (GrowthCase g : kGrowthCases) gc.push_back(to_string(g));
  b["growth_cases"] = std::move(gc);
  ordered_json gt = ordered_json::array();
  for (const auto& [id, _] : e.data.golden) gt.push_back(id);
  b["golden_tables"] = std::move(gt);
  ordered_json fx = ordered_json::array();
  for (const json& f : e.data.fixtures) fx.push_back({{"id", f.value("id", "")}, {"calculator", f.value("calculator", "")}});
  b["fixtures"] = std::move(fx);
  return {200, std::move(b)};
}

// ---------------------------------------------------------------------------
// POST /api/project

struct EvaluateRequest {
  GrowthCase growth = GrowthCase::mid;
  ScenarioKind kind = ScenarioKind::baseline;
  bool custom = false;
  SegmentMap<double> custom_wue;
  double custom_reduction = 0.0;
  WaterParameters params;
  int year_start = kFirstYear;
  int year_end = kLastYear;
};

inline EvaluateRequest parse_evaluate(const Engine& e, const json& body) {
  Fields f(body, {"growth", "scenario", "beta", "cost", "years"});
  EvaluateRequest r;
  r.params = e.data.water;
  if (auto g = f.string("growth")) {
    try {
      r.growth = parse_growth(*g);
    } catch (const Error&) {
      f.fail("growth", "must be one of low, mid, high");
    }
  }
  if (body.contains("scenario")) {
    const json& s = body["scenario"];
    if (s.is_string()) {
      try {
        r.kind = parse_scenario(s.get<std::string>());
      } catch (const Error&) {
        f.fail("scenario", "must be a scenario name or a custom {base_wue, reduction} object");
      }
    } else if (s.is_object()) {
      r.custom = true;
      r.kind = ScenarioKind::custom;
      Fields cf(s, {"base_wue", "reduction"});
      auto red = cf.number("reduction");
      if (red && !(*red >= 0 && *red < 1)) cf.fail("reduction", "must lie in [0, 1)");
      r.custom_reduction = red.value_or(0.0);
      r.custom_wue[Segment::others] = e.data.wue.others_wue;
      if (!s.contains("base_wue") || !s["base_wue"].is_object()) {
        cf.fail("base_wue", "required object {hyperscale, colocation[, others]}");
      } else {
        const json& w = s["base_wue"];
        Fields wf(w, {"hyperscale", "colocation", "others"});
        auto hs = wf.number("hyperscale"), co = wf.number("colocation"), ot = wf.number("others");
        wf.require("hyperscale", hs);
        wf.require("colocation", co);
        wf.positive("hyperscale", hs);
        wf.positive("colocation", co);
        wf.non_negative("others", ot);
        try {
          wf.check();
        } catch (const RequestError& err) {
          for (const auto& [k, v] : err.fields()) cf.fail("base_wue." + k, v);
        }
        if (hs) r.custom_wue[Segment::hyperscale] = *hs;
        if (co) r.custom_wue[Segment::colocation] = *co;
        if (ot) r.custom_wue[Segment::others] = *ot;
      }
      try {
        cf.check();
      } catch (const RequestError& err) {
        for (const auto& [k, v] : err.fields()) f.fail("scenario." + k, v);
      }
    } else {
      f.fail("scenario", "must be a scenario name or a custom {base_wue, reduction} object");
    }
  }
  if (auto b = f.number("beta")) {
    if (!(*b >= 1)) f.fail("beta", "must be >= 1");
    r.params.peaking.beta = *b;
  }
  if (body.contains("cost")) {
    try {
      r.params.cost = detail::cost_from_json(body["cost"], "cost");
      if (!(r.params.cost.low > 0 && r.params.cost.low <= r.params.cost.high))
        f.fail("cost", "requires 0 < low <= high");
    } catch (const ConfigError& err) {
      f.fail("cost", err.message());
    }
  }
  if (body.contains("years")) {
    try {
      std::tie(r.year_start, r.year_end) = detail::years_from_json(body["years"], "years");
      if (r.year_start < kFirstYear || r.year_end > kLastYear || r.year_start > r.year_end)
        f.fail("years", "range must lie within 2024-2030 with start <= end");
    } catch (const ConfigError& err) {
      f.fail("years", err.message());
    }
  }
  f.check();
  return r;
}

/// The report for a request; shared with the CLI.
inline ProjectionReport evaluate(const Engine& e, const EvaluateRequest& r) {
  if (!r.custom) return e.run(r.kind, r.growth, r.params, r.year_start, r.year_end);
  WueTrajectory t = segment_trajectory("custom", ScenarioKind::custom, r.custom_wue, r.custom_reduction);
  return project(e.energy, t, r.growth, e.ratios, r.params, r.year_start, r.year_end);
}

inline std::string scenario_column(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::baseline: return "Baseline Total";
    case ScenarioKind::moderate: return "Moderate Total";
    case ScenarioKind::optimistic: return "Optimistic Total";
    case ScenarioKind::reference_lbnl: return "Reference LBNL Total";
    case ScenarioKind::reference_ns: return "Reference NS Total";
    case ScenarioKind::custom: break;
  }
  return "";
}

inline ordered_json project_provenance(const Engine& e, const EvaluateRequest& r) {
  const WaterParameters& d = e.data.water;
  bool published = !r.custom && r.year_start == kFirstYear && r.year_end == kLastYear &&
                   r.params.peaking.beta == d.peaking.beta && r.params.cost.low == d.cost.low &&
                   r.params.cost.high == d.cost.high;
  std::string growth = detail::growth_title(r.growth);
  auto cell = [&](const std::string& row) {
    if (r.custom) return std::string("custom scenario; no published counterpart");
    if (!published) return std::string("overridden parameters; no published counterpart");
    return "water_capacity_valuation: " + row + " " + growth + " / " + scenario_column(r.kind);
  };
  ordered_json p = ordered_json::array();
  p.push_back(provenance_item("capacity_increase_mgd", cell("2024-2030 Increase")));
  p.push_back(provenance_item("valuation", cell("2024-2030 Valuation")));
  p.push_back(provenance_item("start_add_mgd", cell(std::to_string(r.year_start) + " ADD")));
  p.push_back(provenance_item("end_add_mgd", cell(std::to_string(r.year_end) + " ADD")));
  p.push_back(provenance_item("withdrawal_share",
                              "end-year ADD / public-supply withdrawal " +
                                  format_fixed(d.benchmarks.public_withdrawal_mgd, 0, true) + " MGD"));
  p.push_back(provenance_item("consumption_share",
                              "end-year consumption per day / public-supply consumptive use " +
                                  format_fixed(d.benchmarks.public_consumptive_mgd, 0, true) + " MGD"));
  return p;
}

inline ordered_json request_echo(const EvaluateRequest& r) {
  ordered_json p;
  p["growth"] = to_string(r.growth);
  if (r.custom) {
    p["scenario"] = {{"base_wue",
                      {{"hyperscale", r.custom_wue[Segment::hyperscale]},
                       {"colocation", r.custom_wue[Segment::colocation]},
                       {"others", r.custom_wue[Segment::others]}}},
                     {"reduction", r.custom_reduction}};
  } else {
    p["scenario"] = to_string(r.kind);
  }
  p["beta"] = r.params.peaking.beta;
  p["cost"] = {{"low", r.params.cost.low}, {"high", r.params.cost.high}};
  p["years"] = {r.year_start, r.year_end};
  return p;
}

inline Response project(const Engine& e, const json& body) {
  EvaluateRequest req = parse_evaluate(e, body);
  ProjectionReport rep = guarded("scenario", [&] { return evaluate(e, req); });
  BenchmarkShares sh = benchmark_shares(rep, rep.year_end, req.params.benchmarks);
  ordered_json b;
  b["engine_version"] = kEngineVersion;
  b["scenario"] = req.custom ? "custom" : std::string(to_string(req.kind));
  b["parameters"] = request_echo(req);
  b["headline"] = {{"capacity_increase_mgd", rep.total_capacity_increase},
                   {"capacity_increase_display", format_fixed(rep.total_capacity_increase, 0, true)},
                   {"valuation_usd", {rep.total_valuation.first, rep.total_valuation.second}},
                   {"valuation_display_billion", "(" + format_fixed(rep.total_valuation.first / 1e9, 0) +
                                                     ", " + format_fixed(rep.total_valuation.second / 1e9, 0) + ")"},
                   {"withdrawal_share", sh.withdrawal_share},
                   {"consumption_share", sh.consumption_share}};
  b["report"] = report_to_json(rep);
  b["provenance"] = project_provenance(e, req);
  return {200, std::move(b)};
}

// ---------------------------------------------------------------------------
// Calculators

inline Response site_capacity(const Engine& e, const json& body) {
  Fields f(body, {"it_load_mw", "it", "pwue", "annual_wue", "wue", "beta", "consumptive_ratio",
                  "ratio", "generator_mw", "redundancy", "utilization"});
  auto pick = [&](const char* a, const char* b) {
    auto x = f.number(a);
    return x ? x : f.number(b);
  };
  auto it = pick("it_load_mw", "it");
  auto pw = f.number("pwue");
  auto wue = pick("annual_wue", "wue");
  auto beta = f.number("beta");
  auto ratio = pick("consumptive_ratio", "ratio");
  auto gen = f.number("generator_mw");
  auto red = f.number("redundancy");
  auto util = f.number("utilization");
  f.non_negative("it_load_mw", it);
  f.non_negative("pwue", pw);
  f.non_negative("annual_wue", wue);
  f.unit_interval("consumptive_ratio", ratio);
  f.positive("generator_mw", gen);
  f.unit_interval("utilization", util);
  if (beta && !(*beta >= 1)) f.fail("beta", "must be >= 1");
  if (red && !(*red >= 1)) f.fail("redundancy", "must be >= 1");
  if (!it && !gen) f.fail("it_load_mw", "required unless generator_mw is given");
  if (!pw && !wue) f.fail("pwue", "pwue or annual_wue required");
  f.check();

  SitePlan plan;
  Trace pre;
  if (it) {
    plan.it_load_mw = *it;
  } else {
    plan.it_load_mw = it_from_generators(*gen, red.value_or(2.0), util.value_or(0.8));
    pre.push_back({"IT load", "generator_mw / redundancy * utilization", plan.it_load_mw, "MW"});
  }
  if (pw) plan.pwue = *pw;
  if (wue) plan.annual_wue = *wue;
  plan.beta = beta.value_or(1.0);
  plan.consumptive_ratio = ratio.value_or(e.data.water.default_consumptive_ratio);
  SiteCapacityResult r = guarded("site", [&] { return site_peak_capacity(plan); });
  r.trace.insert(r.trace.begin(), pre.begin(), pre.end());

  ordered_json b;
  b["engine_version"] = kEngineVersion;
  ordered_json in;
  in["it_load_mw"] = plan.it_load_mw;
  if (plan.pwue) in["pwue"] = *plan.pwue;
  if (plan.annual_wue) in["annual_wue"] = *plan.annual_wue;
  in["beta"] = plan.beta;
  in["consumptive_ratio"] = plan.consumptive_ratio;
  b["inputs"] = std::move(in);
  AllocationIntensity ai = plan.it_load_mw > 0 ? allocation_intensity(r.capacity_mgd, plan.it_load_mw)
                                               : AllocationIntensity{};
  b["result"] = {{"pwue", r.pwue},
                 {"withdrawal_l_per_kwh", r.withdrawal_l_per_kwh},
                 {"peak_liters_per_day", r.peak_liters_per_day},
                 {"capacity_mgd", r.capacity_mgd},
                 {"capacity_display", format_fixed(r.capacity_mgd, 2) + " MGD"},
                 {"gallons_per_mw_day", ai.gallons_per_mw_day}};
  b["trace"] = trace_json(r.trace);
  ordered_json prov = ordered_json::array();
  prov.push_back(provenance_item("capacity_mgd", "it_load_mw * 24000 kWh/MW-day * pwue / consumptive_ratio, L to MG"));
  if (auto fx = matching_fixture(e, "site-capacity", body)) prov.push_back(provenance_item("inputs", *fx));
  b["provenance"] = std::move(prov);
  return {200, std::move(b)};
}

inline Response wci(const Engine& e, const json& body) {
  Fields f(body, {"added", "allocated", "available"});
  auto added = f.number("added"), alloc = f.number("allocated"), avail = f.number("available");
  f.require("added", added);
  f.require("allocated", alloc);
  f.require("available", avail);
  f.non_negative("added", added);
  f.non_negative("allocated", alloc);
  f.positive("available", avail);
  f.check();
  WciResult r = wci(WciInputs{*added, *alloc, *avail});
  ordered_json b;
  b["engine_version"] = kEngineVersion;
  b["inputs"] = {{"added", *added}, {"allocated", *alloc}, {"available", *avail}};
  b["result"] = {{"score", r.score}, {"class", to_string(r.cls)}, {"score_display", format_fixed(r.score, 2)}};
  b["trace"] = trace_json(r.trace);
  ordered_json prov = ordered_json::array();
  prov.push_back(provenance_item("score", "(added - allocated) / available; available is a scenario input"));
  if (auto fx = matching_fixture(e, "wci", body)) prov.push_back(provenance_item("inputs", *fx));
  b["provenance"] = std::move(prov);
  return {200, std::move(b)};
}

inline Response econ(const Engine& e, const json& body) {
  Fields f(body, {"it_mw", "capacity_utilization", "pue_delta", "water_capacity_low_mgd",
                  "water_capacity_high_mgd", "water_cost_per_mgd", "generator_cost_per_kw"});
  EconComparison c;
  auto set = [&](const char* key, double& dst) {
    if (auto v = f.number(key)) dst = *v;
  };
  set("it_mw", c.it_mw);
  set("capacity_utilization", c.capacity_utilization);
  set("pue_delta", c.pue_delta);
  set("water_capacity_low_mgd", c.water_capacity_low_mgd);
  set("water_capacity_high_mgd", c.water_capacity_high_mgd);
  set("water_cost_per_mgd", c.water_cost_per_mgd);
  if (body.contains("generator_cost_per_kw")) {
    const json& g = body["generator_cost_per_kw"];
    if (!g.is_object() || g.empty()) {
      f.fail("generator_cost_per_kw", "must be a nonempty object of region -> $/kW");
    } else {
      c.generator_cost_per_kw.clear();
      for (const auto& [region, v] : g.items()) {
        if (!v.is_number() || !(v.get<double>() > 0))
          f.fail("generator_cost_per_kw." + region, "must be a number > 0");
        else
          c.generator_cost_per_kw[region] = v.get<double>();
      }
    }
  }
  f.non_negative("it_mw", std::optional<double>(c.it_mw));
  f.unit_interval("capacity_utilization", std::optional<double>(c.capacity_utilization));
  f.non_negative("pue_delta", std::optional<double>(c.pue_delta));
  f.positive("water_cost_per_mgd", std::optional<double>(c.water_cost_per_mgd));
  f.non_negative("water_capacity_low_mgd", std::optional<double>(c.water_capacity_low_mgd));
  if (c.water_capacity_high_mgd < c.water_capacity_low_mgd)
    f.fail("water_capacity_high_mgd", "must be >= water_capacity_low_mgd");
  f.check();
  EconResult r = guarded("econ", [&] { return peak_power_econ(c); });
  ordered_json b;
  b["engine_version"] = kEngineVersion;
  ordered_json gen;
  for (const auto& [k, v] : c.generator_cost_per_kw) gen[k] = v;
  b["inputs"] = {{"it_mw", c.it_mw},
                 {"capacity_utilization", c.capacity_utilization},
                 {"pue_delta", c.pue_delta},
                 {"water_capacity_low_mgd", c.water_capacity_low_mgd},
                 {"water_capacity_high_mgd", c.water_capacity_high_mgd},
                 {"water_cost_per_mgd", c.water_cost_per_mgd},
                 {"generator_cost_per_kw", gen}};
  ordered_json regions;
  for (const auto& rr : r.regions)
    regions[rr.region] = {{"generator_cost", rr.generator_cost},
                          {"display", "$" + format_fixed(rr.generator_cost / 1e6, 1) + "M"},
                          {"verdict", rr.verdict}};
  b["result"] = {{"peak_mw_avoided", r.peak_mw_avoided},
                 {"water_cost_low", r.water_cost_low},
                 {"water_cost_high", r.water_cost_high},
                 {"water_cost_display", "$" + format_fixed(r.water_cost_low / 1e6, 1) + "-" +
                                            format_fixed(r.water_cost_high / 1e6, 1) + "M"},
                 {"regions", regions}};
  b["trace"] = trace_json(r.trace);
  ordered_json prov = ordered_json::array();
  prov.push_back(provenance_item("peak_mw_avoided", "it_mw / capacity_utilization * pue_delta"));
  prov.push_back(provenance_item("regions", "peak_mw_avoided * 1000 * generator $/kW"));
  if (auto fx = matching_fixture(e, "econ", body)) prov.push_back(provenance_item("inputs", *fx));
  b["provenance"] = std::move(prov);
  return {200, std::move(b)};
}

// ---------------------------------------------------------------------------
// GET /api/golden/{id}

inline Response golden(const Engine& e, const std::string& id) {
  auto it = e.data.golden.find(id);
  if (it == e.data.golden.end()) {
    ordered_json b;
    b["error"] = "not found";
    b["message"] = "no golden table '" + id + "'";
    return {404, std::move(b)};
  }
  const GoldenTable& t = it->second;
  ordered_json b;
  b["id"] = t.id;
  b["title"] = t.title;
  b["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows) rows.push_back({{"label", r.label}, {"cells", r.cells}});
  b["rows"] = std::move(rows);
  b["provenance"] = ordered_json::array({provenance_item("rows", "bundled golden table " + t.id)});
  return {200, std::move(b)};
}

/// Dispatches a POST body to a calculator, mapping rejections to error
/// responses.
template <typename Handler>
Response handle(Handler&& h, const std::string& body) {
  try {
    return h(parse_body(body));
  } catch (const RequestError& e) {
    return error_response(e);
  }
}

}  // namespace api
}  // namespace aquacast
