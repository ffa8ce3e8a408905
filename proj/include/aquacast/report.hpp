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

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "aquacast/dataset.hpp"
#include "aquacast/tables.hpp"
#include "aquacast/water.hpp"

namespace aquacast {

enum class OutputFormat { csv, json, markdown };

constexpr std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::markdown: return "markdown";
  }
  return "?";
}

constexpr std::string_view extension_of(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return ".csv";
    case OutputFormat::json: return ".json";
    case OutputFormat::markdown: return ".md";
  }
  return "";
}

inline OutputFormat parse_format(std::string_view s) {
  for (OutputFormat f : {OutputFormat::csv, OutputFormat::json, OutputFormat::markdown})
    if (to_string(f) == s) return f;
  if (s == "md") return OutputFormat::markdown;
  throw Error("unknown output format '" + std::string(s) + "' (csv, json, markdown)");
}

/// Decimal text that parses back to the same double.
inline std::string exact_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline ordered_json cell_json(const WaterCell& c) {
  ordered_json j;
  j["consumption_mg"] = c.consumption;
  j["withdrawal_mg"] = c.withdrawal;
  j["add_mgd"] = c.add;
  j["mdd_mgd"] = c.mdd;
  j["display"] = {{"consumption_mg", format_fixed(c.consumption, 0, true)},
                  {"withdrawal_mg", format_fixed(c.withdrawal, 0, true)},
                  {"add_mgd", format_fixed(c.add, 0)},
                  {"mdd_mgd", format_fixed(c.mdd, 0)}};
  return j;
}

inline WaterCell cell_from_json(const json& j) {
  return {j.at("consumption_mg").get<double>(), j.at("withdrawal_mg").get<double>(),
          j.at("add_mgd").get<double>(), j.at("mdd_mgd").get<double>()};
}

inline ordered_json valuation_json(const std::pair<double, double>& v) {
  ordered_json j;
  j["low_usd"] = v.first;
  j["high_usd"] = v.second;
  j["display_billion"] = "(" + format_fixed(v.first / 1e9, 0) + ", " + format_fixed(v.second / 1e9, 0) + ")";
  return j;
}

inline std::pair<double, double> valuation_from_json(const json& j) {
  return {j.at("low_usd").get<double>(), j.at("high_usd").get<double>()};
}

inline ScenarioKind kind_from_name(const std::string& s) {
  return s == "custom" ? ScenarioKind::custom : parse_scenario(s);
}

}  // namespace detail

/// Machine schema: unrounded values alongside display strings.
inline ordered_json report_to_json(const ProjectionReport& r) {
  ordered_json j;
  j["schema"] = "aquacast.projection_report/1";
  j["scenario"] = r.scenario;
  j["kind"] = std::string(to_string(r.kind));
  j["growth"] = std::string(to_string(r.growth));
  j["per_segment"] = r.per_segment;
  j["year_start"] = r.year_start;
  j["year_end"] = r.year_end;
  j["beta"] = r.beta;
  j["cost_per_mgd"] = {{"low", r.cost.low}, {"high", r.cost.high}};
  ordered_json years = ordered_json::array();
  for (int y = r.year_start; y <= r.year_end; ++y) {
    ordered_json yj;
    yj["year"] = y;
    for (Segment s : kSegments) yj[std::string(to_string(s))] = detail::cell_json(r.at(y).segment[s]);
    yj["total"] = detail::cell_json(r.at(y).total);
    years.push_back(std::move(yj));
  }
  j["years"] = std::move(years);
  ordered_json inc;
  for (Segment s : kSegments) inc[std::string(to_string(s))] = r.capacity_increase[s];
  inc["total"] = r.total_capacity_increase;
  inc["display"] = format_fixed(r.total_capacity_increase, 0);
  j["capacity_increase_mgd"] = std::move(inc);
  ordered_json val;
  for (Segment s : kSegments) val[std::string(to_string(s))] = detail::valuation_json(r.segment_valuation[s]);
  val["total"] = detail::valuation_json(r.total_valuation);
  j["valuation"] = std::move(val);
  return j;
}

inline ProjectionReport report_from_json(const json& j) {
  if (j.value("schema", std::string()) != "aquacast.projection_report/1")
    throw Error("not a projection report");
  ProjectionReport r;
  r.scenario = j.at("scenario").get<std::string>();
  r.kind = detail::kind_from_name(j.at("kind").get<std::string>());
  r.growth = parse_growth(j.at("growth").get<std::string>());
  r.per_segment = j.at("per_segment").get<bool>();
  r.year_start = j.at("year_start").get<int>();
  r.year_end = j.at("year_end").get<int>();
  r.beta = j.at("beta").get<double>();
  r.cost = {j.at("cost_per_mgd").at("low").get<double>(), j.at("cost_per_mgd").at("high").get<double>()};
  for (const json& yj : j.at("years")) {
    YearWater& yw = r.at(yj.at("year").get<int>());
    for (Segment s : kSegments) yw.segment[s] = detail::cell_from_json(yj.at(std::string(to_string(s))));
    yw.total = detail::cell_from_json(yj.at("total"));
  }
  const json& inc = j.at("capacity_increase_mgd");
  for (Segment s : kSegments) r.capacity_increase[s] = inc.at(std::string(to_string(s))).get<double>();
  r.total_capacity_increase = inc.at("total").get<double>();
  const json& val = j.at("valuation");
  for (Segment s : kSegments)
    r.segment_valuation[s] = detail::valuation_from_json(val.at(std::string(to_string(s))));
  r.total_valuation = detail::valuation_from_json(val.at("total"));
  return r;
}

// ---------------------------------------------------------------------------
// CSV

/// RFC 4180 quoting: fields holding a comma, quote or line break are
/// wrapped in quotes with inner quotes doubled.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Splits RFC 4180 text into records of fields.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      field.clear();
      row.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error("csv: unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline constexpr const char* kReportCsvHeader = "field,year,segment,value";

/// Long-format export: one record per (field, year, segment) value.
/// Metadata rows leave year and segment blank.
inline std::string report_to_csv(const ProjectionReport& r) {
  std::ostringstream os;
  os << kReportCsvHeader << "\n";
  auto row = [&](const std::string& f, const std::string& y, const std::string& s, const std::string& v) {
    os << csv_field(f) << "," << y << "," << s << "," << csv_field(v) << "\n";
  };
  row("scenario", "", "", r.scenario);
  row("kind", "", "", std::string(to_string(r.kind)));
  row("growth", "", "", std::string(to_string(r.growth)));
  row("per_segment", "", "", r.per_segment ? "true" : "false");
  row("year_start", "", "", std::to_string(r.year_start));
  row("year_end", "", "", std::to_string(r.year_end));
  row("beta", "", "", exact_number(r.beta));
  row("cost_low", "", "", exact_number(r.cost.low));
  row("cost_high", "", "", exact_number(r.cost.high));
  auto cells = [&](int y, const std::string& seg, const WaterCell& c) {
    std::string ys = std::to_string(y);
    row("consumption_mg", ys, seg, exact_number(c.consumption));
    row("withdrawal_mg", ys, seg, exact_number(c.withdrawal));
    row("add_mgd", ys, seg, exact_number(c.add));
    row("mdd_mgd", ys, seg, exact_number(c.mdd));
  };
  for (int y = r.year_start; y <= r.year_end; ++y) {
    for (Segment s : kSegments) cells(y, std::string(to_string(s)), r.at(y).segment[s]);
    cells(y, "total", r.at(y).total);
  }
  auto summary = [&](const std::string& seg, double inc, const std::pair<double, double>& v) {
    row("capacity_increase_mgd", "", seg, exact_number(inc));
    row("valuation_low_usd", "", seg, exact_number(v.first));
    row("valuation_high_usd", "", seg, exact_number(v.second));
  };
  for (Segment s : kSegments)
    summary(std::string(to_string(s)), r.capacity_increase[s], r.segment_valuation[s]);
  summary("total", r.total_capacity_increase, r.total_valuation);
  return os.str();
}

inline ProjectionReport report_from_csv(const std::string& text) {
  auto rows = parse_csv(text);
  if (rows.empty() || rows[0].size() != 4 || rows[0][0] != "field")
    throw Error("csv: missing report header");
  ProjectionReport r;
  auto num = [](const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end) throw Error("csv: bad number '" + s + "'");
    return v;
  };
  auto cell_of = [&](const std::string& seg, int y) -> WaterCell& {
    if (seg == "total") return r.at(y).total;
    return r.at(y).segment[parse_segment(seg)];
  };
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != 4) throw Error("csv: record " + std::to_string(i) + " has " + std::to_string(f.size()) + " fields");
    const std::string& name = f[0];
    const std::string& v = f[3];
    if (name == "scenario") r.scenario = v;
    else if (name == "kind") r.kind = detail::kind_from_name(v);
    else if (name == "growth") r.growth = parse_growth(v);
    else if (name == "per_segment") r.per_segment = v == "true";
    else if (name == "year_start") r.year_start = static_cast<int>(num(v));
    else if (name == "year_end") r.year_end = static_cast<int>(num(v));
    else if (name == "beta") r.beta = num(v);
    else if (name == "cost_low") r.cost.low = num(v);
    else if (name == "cost_high") r.cost.high = num(v);
    else if (name == "consumption_mg") cell_of(f[2], static_cast<int>(num(f[1]))).consumption = num(v);
    else if (name == "withdrawal_mg") cell_of(f[2], static_cast<int>(num(f[1]))).withdrawal = num(v);
    else if (name == "add_mgd") cell_of(f[2], static_cast<int>(num(f[1]))).add = num(v);
    else if (name == "mdd_mgd") cell_of(f[2], static_cast<int>(num(f[1]))).mdd = num(v);
    else if (name == "capacity_increase_mgd") {
      if (f[2] == "total") r.total_capacity_increase = num(v);
      else r.capacity_increase[parse_segment(f[2])] = num(v);
    } else if (name == "valuation_low_usd" || name == "valuation_high_usd") {
      auto& p = f[2] == "total" ? r.total_valuation : r.segment_valuation[parse_segment(f[2])];
      (name == "valuation_low_usd" ? p.first : p.second) = num(v);
    } else {
      throw Error("csv: unknown field '" + name + "'");
    }
  }
  return r;
}

/// Fieldwise equality on every unrounded value.
inline bool same_report(const ProjectionReport& a, const ProjectionReport& b) {
  auto cell_eq = [](const WaterCell& x, const WaterCell& y) {
    return x.consumption == y.consumption && x.withdrawal == y.withdrawal && x.add == y.add &&
           x.mdd == y.mdd;
  };
  if (a.scenario != b.scenario || a.kind != b.kind || a.growth != b.growth ||
      a.per_segment != b.per_segment || a.year_start != b.year_start || a.year_end != b.year_end ||
      a.beta != b.beta || a.cost.low != b.cost.low || a.cost.high != b.cost.high)
    return false;
  for (int y = a.year_start; y <= a.year_end; ++y) {
    for (Segment s : kSegments)
      if (!cell_eq(a.at(y).segment[s], b.at(y).segment[s])) return false;
    if (!cell_eq(a.at(y).total, b.at(y).total)) return false;
  }
  return a.capacity_increase == b.capacity_increase &&
         a.total_capacity_increase == b.total_capacity_increase &&
         a.segment_valuation == b.segment_valuation && a.total_valuation == b.total_valuation;
}

// ---------------------------------------------------------------------------
// Tables

inline std::string table_to_csv(const Table& t) {
  std::ostringstream os;
  os << "label";
  for (const auto& c : t.columns) os << "," << csv_field(c);
  os << "\n";
  for (const auto& r : t.rows) {
    os << csv_field(r.label);
    for (const auto& c : r.cells) os << "," << csv_field(c.display());
    os << "\n";
  }
  return os.str();
}

inline ordered_json table_to_json(const Table& t) {
  ordered_json j;
  j["id"] = t.id;
  j["title"] = t.title;
  j["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows) {
    ordered_json cells = ordered_json::array();
    for (const auto& c : r.cells) {
      ordered_json cj;
      cj["display"] = c.display();
      if (c.dash) cj["values"] = ordered_json::array();
      else cj["values"] = c.values;
      cells.push_back(std::move(cj));
    }
    rows.push_back({{"label", r.label}, {"cells", std::move(cells)}});
  }
  j["rows"] = std::move(rows);
  return j;
}

namespace detail {

inline std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

inline void md_header(std::ostringstream& os, const std::string& first,
                      const std::vector<std::string>& columns) {
  os << "| " << md_escape(first);
  for (const auto& c : columns) os << " | " << md_escape(c);
  os << " |\n|---";
  for (std::size_t i = 0; i < columns.size(); ++i) os << "|---:";
  os << "|\n";
}

}  // namespace detail

inline std::string table_to_markdown(const Table& t) {
  std::ostringstream os;
  os << "### " << t.title << "\n\n";
  detail::md_header(os, "", t.columns);
  for (const auto& r : t.rows) {
    os << "| " << detail::md_escape(r.label);
    for (const auto& c : r.cells) os << " | " << detail::md_escape(c.display());
    os << " |\n";
  }
  return os.str();
}

/// Capacity layout: start/end ADD and capacity, then increase and
/// valuation, by segment.
inline std::string report_to_markdown(const ProjectionReport& r) {
  std::ostringstream os;
  os << "### " << r.scenario << " / " << to_string(r.growth) << " (beta " << exact_number(r.beta)
     << ", $" << format_fixed(r.cost.low / 1e6, 0) << "-" << format_fixed(r.cost.high / 1e6, 0)
     << "M per MGD)\n\n";
  std::vector<std::string> cols = {"Total", "Hyperscale", "Colocation", "Others"};
  auto by_col = [&](auto&& pick) {
    std::vector<std::string> v;
    v.push_back(pick(-1));
    for (Segment s : kSegments) v.push_back(pick(static_cast<int>(s)));
    return v;
  };
  auto line = [&](const std::string& label, const std::vector<std::string>& cells) {
    os << "| " << label;
    for (const auto& c : cells) os << " | " << c;
    os << " |\n";
  };
  detail::md_header(os, "", cols);
  for (int y : {r.year_start, r.year_end}) {
    for (const char* kind : {"ADD", "Capacity"}) {
      bool add = std::string(kind) == "ADD";
      line(std::to_string(y) + " " + kind, by_col([&](int seg) {
             const WaterCell& c = seg < 0 ? r.at(y).total : r.at(y).segment[static_cast<Segment>(seg)];
             return format_fixed(add ? c.add : c.mdd, 0);
           }));
    }
  }
  std::string span = std::to_string(r.year_start) + "-" + std::to_string(r.year_end);
  line(span + " Increase", by_col([&](int seg) {
         return format_fixed(seg < 0 ? r.total_capacity_increase : r.capacity_increase[static_cast<Segment>(seg)], 0);
       }));
  line(span + " Valuation ($B)", by_col([&](int seg) {
         auto v = seg < 0 ? r.total_valuation : r.segment_valuation[static_cast<Segment>(seg)];
         return "(" + format_fixed(v.first / 1e9, 0) + ", " + format_fixed(v.second / 1e9, 0) + ")";
       }));
  os << "\nAnnual volumes (million gallons)\n\n";
  detail::md_header(os, "Year", {"Consumption", "Withdrawal"});
  for (int y = r.year_start; y <= r.year_end; ++y)
    line(std::to_string(y), {format_fixed(r.at(y).total.consumption, 0, true),
                             format_fixed(r.at(y).total.withdrawal, 0, true)});
  return os.str();
}

inline std::string render_report(const ProjectionReport& r, OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return report_to_csv(r);
    case OutputFormat::json: return report_to_json(r).dump(2) + "\n";
    case OutputFormat::markdown: return report_to_markdown(r);
  }
  return "";
}

inline std::string render_table(const Table& t, OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return table_to_csv(t);
    case OutputFormat::json: return table_to_json(t).dump(2) + "\n";
    case OutputFormat::markdown: return table_to_markdown(t);
  }
  return "";
}

// ---------------------------------------------------------------------------
// Headline

/// Capacity increases, valuation bands and 2030 benchmark shares for the
/// baseline and optimistic scenarios.
inline ordered_json headline_json(const ReportGrid& grid, const NationalBenchmarks& n) {
  ordered_json j;
  j["schema"] = "aquacast.headline/1";
  for (ScenarioKind k : {ScenarioKind::baseline, ScenarioKind::moderate, ScenarioKind::optimistic}) {
    ordered_json sj;
    for (GrowthCase g : kGrowthCases) {
      auto it = grid.find({k, g});
      if (it == grid.end()) continue;
      const ProjectionReport& r = it->second;
      ordered_json gj;
      gj["capacity_increase_mgd"] = r.total_capacity_increase;
      gj["capacity_increase_display"] = format_fixed(r.total_capacity_increase, 0, true);
      gj["valuation_usd"] = {r.total_valuation.first, r.total_valuation.second};
      gj["valuation_display_billion"] = "(" + format_fixed(r.total_valuation.first / 1e9, 0) + ", " +
                                        format_fixed(r.total_valuation.second / 1e9, 0) + ")";
      BenchmarkShares b = benchmark_shares(r, r.year_end, n);
      gj["benchmark_year"] = r.year_end;
      gj["withdrawal_share"] = b.withdrawal_share;
      gj["consumption_share"] = b.consumption_share;
      gj["withdrawal_share_display"] = format_fixed(b.withdrawal_share * 100, 1) + "%";
      gj["consumption_share_display"] = format_fixed(b.consumption_share * 100, 0) + "%";
      sj[std::string(to_string(g))] = std::move(gj);
    }
    if (!sj.empty()) j[std::string(to_string(k))] = std::move(sj);
  }
  return j;
}

}  // namespace aquacast
